"""Truncated Hankel norms ||[H_E]_N|| via dense symmetric eigensolve (scipy)."""
import numpy as np
from scipy.linalg import eigvalsh


def coeff(p):
    p = np.asarray(p, dtype=float)
    out = np.where(p == 0, 0.5, np.sin(np.pi * p / 2) / (np.pi * np.where(p == 0, 1, p)))
    return out


def truncation(N):
    k = np.arange(1, N + 1)
    return coeff(1 - k[:, None] - k[None, :])


if __name__ == "__main__":
    for N in (1, 2, 3, 8, 64, 512, 1024, 4096):
        w = eigvalsh(truncation(N))
        print(N, repr(max(abs(w[0]), abs(w[-1]))))
