"""Discretized pairing <A_n(1_E), A_n(z^p)>_n vs the Fourier coefficient of 1_E."""
import numpy as np

def pairing(n, p):
    m = np.arange(n)
    inside = np.array([(4 * (k % n) < n) or (4 * (k % n) > 3 * n) for k in m])
    return np.sum(inside * np.exp(-2j * np.pi * p * m / n)) / n

def coeff(p):
    return 0.5 if p == 0 else np.sin(np.pi * p / 2) / (np.pi * p)

for p in (1, 3, 2):
    errs = [abs(pairing(n, p) - coeff(p)) for n in (64, 128, 256)]
    print(p, errs, [errs[i] / errs[i + 1] for i in range(2)])
