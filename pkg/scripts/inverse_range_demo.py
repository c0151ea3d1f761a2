"""Compare W(A) with alpha^2 W(A+) for each singular value alpha, and report
norm/radius quantities of A and A+.

    python3 scripts/inverse_range_demo.py [--tensor complex_diag] [--n 500]
"""
import argparse
from dataclasses import dataclass

import numpy as np

from tensor_numrange import catalog
from tensor_numrange.numrange import numerical_radius, separation_gap
from tensor_numrange.pinv import classify_structure, moore_penrose
from tensor_numrange.spectral import singular_values, spectral_norm


@dataclass
class DemoConfig:
    tensor: str = "complex_diag"
    n_theta: int = 500


def run(cfg: DemoConfig):
    A = catalog.NAMED[cfg.tensor]()
    P = moore_penrose(A)
    s = classify_structure(A)
    print(f"tensor {cfg.tensor}: shape {A.shape}, normal={s.normal}, hermitian={s.hermitian}")
    nA, nP = spectral_norm(A), spectral_norm(P)
    wA, wP = numerical_radius(A, cfg.n_theta), numerical_radius(P, cfg.n_theta)
    print(f"||A||={nA:.4f} ||A+||={nP:.4f} w(A)={wA:.4f} w(A+)={wP:.4f}")
    print(f"1 <= ||A|| ||A+|| = {nA * nP:.4f} <= 4 w(A) w(A+) = {4 * wA * wP:.4f}")
    print("alpha^2      gap        W(A) meets alpha^2 W(A+)")
    for alpha in singular_values(A):
        if alpha == 0:
            continue
        B = alpha * alpha * P
        gap = separation_gap(A, B, cfg.n_theta)
        tol = 1e-6 * (2 + np.linalg.norm(A.array) + np.linalg.norm(B.array))
        print(f"{alpha * alpha:8.4f}  {gap:+.3e}  {'yes' if gap <= tol else 'no'}")

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tensor", choices=sorted(catalog.NAMED), default=DemoConfig.tensor)
    ap.add_argument("--n", type=int, default=DemoConfig.n_theta)
    args = ap.parse_args()
    run(DemoConfig(args.tensor, args.n))
