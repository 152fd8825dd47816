#!/usr/bin/env python3
"""Regenerates core/data/factors.dat (factorisations of q^d - 1)."""
import sys
from sympy import factorint, cyclotomic_poly, divisors
from sympy.abc import X

QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49]
BITS = 160


def factor_qd(q, d):
    acc = {}
    for k in divisors(d):
        v = int(cyclotomic_poly(k, X).subs(X, q))
        for p, e in factorint(v).items():
            acc[p] = acc.get(p, 0) + e
    return acc


def main():
    out = sys.stdout
    out.write("# q d prime^exp ...   (factorisation of q^d - 1)\n")
    for q in QS:
        d = 1
        while (q ** d).bit_length() <= BITS:
            f = factor_qd(q, d)
            assert eval("*".join(f"{p}**{e}" for p, e in f.items()) or "1") == q ** d - 1
            toks = " ".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in sorted(f.items()))
            out.write(f"{q} {d} {toks}\n")
            out.flush()
            d += 1


if __name__ == "__main__":
    main()
