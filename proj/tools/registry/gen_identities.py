#!/usr/bin/env python3
"""Writes data/identities.json from the compact identity table below.

Summands use the notation of the C++ term parser: a quadratic exponent in n and
r, sign powers, and Pochhammer symbols such as (-q;q)_{n+2r} or (iq;q)_{2n}^2.
Products are lists of infinite symbols such as (q^4,q^5,q^9;q^9).
"""

import argparse
import json
import re
from fractions import Fraction
from pathlib import Path

INF = "inf"


def frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def split_terms(s):
    s = s.replace(" ", "")
    return [t for t in re.split(r"(?=[+-])", s) if t]


def coefficient(term):
    m = re.match(r"^([+-]?)(\d+(?:/\d+)?)?(.*)$", term)
    sign, num, var = m.groups()
    c = Fraction(num) if num else Fraction(1)
    return (-c if sign == "-" else c), var


def linear(s):
    out = {"n": 0, "r": 0, "c": 0}
    for t in split_terms(s):
        c, var = coefficient(t)
        assert c.denominator == 1, s
        out[var or "c"] += int(c)
    return out


def quadratic(s):
    keys = {"n^2": "A", "nr": "B", "r^2": "C", "n": "D", "r": "E", "": "F"}
    out = dict.fromkeys("ABCDEF", Fraction(0))
    for t in split_terms(s):
        c, var = coefficient(t)
        out[keys[var]] += c
    return {k: frac(v) for k, v in out.items()}


def monomial(s):
    """'-iq^2' -> ('-i', '2'); '-1' -> ('-1', '0'); 'q' -> ('1', '1')."""
    m = re.match(r"^(-?)(i|omega)?(\d+)?(q(?:\^(\d+(?:/\d+)?))?)?$", s)
    assert m, s
    sign, root, const, qpart, qexp = m.groups()
    unit = root or const or "1"
    if sign:
        unit = "-" + unit if unit != "-1" else "1"
    exp = "0" if not qpart else (qexp or "1")
    return unit, frac(exp)


POCH = re.compile(r"^\(([^;]+);([^)]+)\)(?:_(\{[^}]*\}|\w+))?(?:\^(\d+))?$")


def poch(text):
    m = POCH.match(text.replace(" ", ""))
    assert m, text
    bases, step, length, power = m.groups()
    su, se = monomial(step)
    if length is None or length == INF:
        ln = INF
    else:
        ln = linear(length.strip("{}"))
    out = []
    for b in bases.split(","):
        bu, be = monomial(b)
        out.append({"base_unit": bu, "base_exp": be, "step_unit": su, "step_exp": se,
                    "length": ln, "power": int(power or 1)})
    return out


def factors(items):
    out = []
    for it in items:
        out.extend(poch(it))
    return out


def product(num, den):
    out = []
    for f in factors(num):
        out.append(f)
    for f in factors(den):
        f["power"] = -f["power"]
        out.append(f)
    return out


def entry(id_, q, num, den, rhs_num, rhs_den, dek, *, units=(), indices=2, a="1",
          rho1=INF, rho2=INF, N=INF, q_scale=1, group="list", **extra):
    meta = {"d": dek[0], "e": dek[1], "k": dek[2], "a": a, "rho1": rho1, "rho2": rho2,
            "N": N, "q_scale": frac(q_scale), "group": group}
    meta.update(extra)
    return {
        "id": id_,
        "indices": indices,
        "lhs": {
            "units": [{"unit": u, "power": linear(p)} for u, p in units],
            "q_exponent": quadratic(q),
            "numerator": [f for it in num for f in poch(it.replace("_inf", ""))],
            "denominator": [f for it in den for f in poch(it)],
        },
        "rhs": product(rhs_num, rhs_den),
        "meta": meta,
    }


HALF = "-q^(1/2)"
SIGN_N = [("-1", "n")]
SIGN_NR = [("-1", "n+r")]
SIGN_R = [("-1", "r")]
I_N = [("i", "n")]
# denominators shared by the i-bearing entries
DEN142 = ["(q^4;q^4)_{n+r}", "(iq;q)_{2n+2r}^2", "(q;q)_r", "(-iq;q)_{n+2r}", "(-q;q)_{n+2r}", "(q;q)_n",
          "(iq;q)_n"]
DEN142_2 = ["(q^8;q^8)_{n+r}", "(iq^2;q^2)_{2n+2r}^2", "(q^2;q^2)_r", "(-iq^2;q^2)_{n+2r}", "(-q^2;q^2)_{n+2r}",
            "(q^2;q^2)_n", "(iq^2;q^2)_n"]
TYPO = "(q^2,q^4)_r printed with a comma; read as (q^2;q^4)_r"

IDENTITIES = [
    entry("RRa1", "n^2", [], ["(q;q)_n"], ["(q^2,q^3,q^5;q^5)"], ["(q;q)"], (1, 1, 2), indices=1,
          group="classical"),
    entry("RRa2", "n^2+n", [], ["(q;q)_n"], ["(q,q^4,q^5;q^5)"], ["(q;q)"], (1, 1, 2), indices=1, a="q",
          group="classical"),
    entry("ex1", "2n^2+3r^2+4nr", [], ["(-q;q)_{n+r}", "(-q;q)_{n+2r}", "(q;q)_n", "(q;q)_r"],
          ["(q^4,q^5,q^9;q^9)"], ["(q^2;q^2)"], (1, 2, 3), group="overview", same_as="PNS123"),
    entry("ex2", "n^2+3r^2+4nr", ["(-q;-q)_{2n+2r}"], ["(q^2;q^2)_{2n+2r}", "(q^2;q^2)_r", "(q^2;q^2)_n"],
          ["(q^6,q^8,q^14;q^14)", "(q^2;q^4)"], ["(q;q)"], (2, 2, 3), rho2=HALF, group="overview",
          same_as="ATNS223"),
    entry("ex3", "3n^2+6nr+6r^2", ["(q;q)_{3r}"], ["(q^3;q^3)_{2r}", "(q^3;q^3)_r", "(q^3;q^3)_n"],
          ["(q^7,q^8,q^15;q^15)"], ["(q^3;q^3)"], (1, 3, 5), group="overview", same_as="PNS135"),
    entry("ex4", "2n^2+3r^2+4nr", [], ["(-q;q)_{2n+2r}", "(q;q^2)_r", "(q;q)_r", "(q^2;q^2)_n"],
          ["(q^14,q^16,q^30;q^30)"], ["(q^2;q^2)"], (2, 2, 5), group="overview", same_as="PNS225"),
    entry("ex5", "n^2+2nr+3r^2", ["(-q;q^2)_{n+r}"], ["(q^2;q^2)_n", "(q^2;q^2)_r", "(q^2;q^4)_r"],
          ["(q^16,q^20,q^36;q^36)", "(q^2;q^4)"], ["(q;q)"], (2, 1, 5), rho2=HALF, q_scale="1/2", group="overview",
          same_as="ATNS215"),
    entry("ex6", "n^2+2r^2", [], ["(q;q^2)_n", "(q^2;q^2)_r", "(q^2;q^4)_r", "(q;q)_{n-2r}"],
          ["(q^28,q^32,q^60;q^60)"], ["(q;q)"], (4, 1, 7), group="overview", same_as="PNS417", source_typo=TYPO),

    entry("ATNS123", "n^2+2nr+2r^2", ["(-q;q^2)_{n+r}"], ["(-q;q)_{n+r}", "(-q;q)_{n+2r}", "(q;q)_n", "(q;q)_r"],
          ["(q^3,q^4,q^7;q^7)", "(-q;q^2)"], ["(q^2;q^2)"], (1, 2, 3), rho2=HALF),
    entry("PNS131", "5/2n^2-1/2n+4nr+2r^2", ["(q;q)_{n+r}", "(q;q)_{n+2r}", "(q;q)_{2n+3r}"],
          ["(q^3;q^3)_{n+r}", "(q^3;q^3)_{n+2r}", "(q;q)_n", "(q;q)_r", "(q;q)_{2n+2r}"],
          ["(q^3,q^4,q^7;q^7)"], ["(q^3;q^3)"], (1, 3, 1), units=SIGN_N),
    entry("ATNS131", "2n^2-n+2nr+r^2",
          ["(-q^3;q^6)_{n+r}", "(q^2;q^2)_{n+r}", "(q^2;q^2)_{n+2r}", "(q^2;q^2)_{2n+3r}"],
          ["(q^6;q^6)_{n+r}", "(q^6;q^6)_{n+2r}", "(q^2;q^2)_n", "(q^2;q^2)_r", "(q^2;q^2)_{2n+2r}"],
          ["(q^3,q^5,q^8;q^8)", "(-q^3;q^6)"], ["(q^6;q^6)"], (1, 3, 1), units=SIGN_N, rho2=HALF, q_scale="1/2"),
    entry("PNS123-2", "2n^2+2n+4nr+3r^2+3r", [], ["(-q;q)_{n+r}", "(-q;q)_{n+2r+1}", "(q;q)_n", "(q;q)_r"],
          ["(q,q^8,q^9;q^9)"], ["(q^2;q^2)"], (1, 2, 3), a="q", lemma_factor=product(["(q;q)_1"], ["(q^2;q^2)_1"])),
    entry("PNS123", "2n^2+4nr+3r^2", [], ["(-q;q)_{n+r}", "(-q;q)_{n+2r}", "(q;q)_n", "(q;q)_r"],
          ["(q^4,q^5,q^9;q^9)"], ["(q^2;q^2)"], (1, 2, 3)),
    entry("ATNS124", "n^2+2nr+3r^2", ["(-q;q^2)_{n+r}"], ["(-q;q)_{2r}", "(q^2;q^2)_n", "(q^2;q^2)_r"],
          ["(q^4,q^5,q^9;q^9)", "(-q;q^2)"], ["(q^2;q^2)"], (1, 2, 4), rho2=HALF),
    entry("PNS141-2", "6n^2+8nr+5r^2+4n+4r", [],
          ["(-q^2;q^2)_{2n+2r+1}", "(q^2;q^2)_r", "(-q;q)_{2r+1}", "(q^4;q^4)_n"],
          ["(q,q^8,q^9;q^9)"], ["(q^4;q^4)"], (1, 4, 1), units=SIGN_NR, a="q", lemma_factor=product(["(q;q)_1"], ["(q^4;q^4)_1"])),
    entry("PNS141", "6n^2+8nr+5r^2", [], ["(-q^2;q^2)_{2n+2r}", "(q^2;q^2)_r", "(-q;q)_{2r}", "(q^4;q^4)_n"],
          ["(q^4,q^5,q^9;q^9)"], ["(q^4;q^4)"], (1, 4, 1), units=SIGN_NR),
    entry("ATNS222", "2n^2+2nr+3/2r^2-1/2r", ["(-q;q^2)_{n+r}"],
          ["(-q;q)_{2n+2r}", "(q;q)_r", "(q;q^2)_r", "(q^2;q^2)_n"],
          ["(q^4,q^6,q^10;q^10)", "(-q;q^2)"], ["(q^2;q^2)"], (2, 2, 2), units=SIGN_N, rho2=HALF),
    entry("ATNS141", "8n^2+8nr+6r^2", ["(-q^4;q^8)_{n+r}"],
          ["(-q^4;q^4)_{2n+2r}", "(q^4;q^4)_r", "(-q^2;q^2)_{2r}", "(q^8;q^8)_n"],
          ["(q^4,q^6,q^10;q^10)", "(-q^4;q^8)"], ["(q^8;q^8)"], (1, 4, 1), units=SIGN_NR, rho2=HALF, q_scale="1/2"),
    entry("PNS223-2", "n^2+2r^2+3nr+2n+3r", ["(q;q)_{n+r+1}"], ["(q;q)_{2n+2r+2}", "(q;q)_r", "(q;q)_n"],
          ["(q,q^10,q^11;q^11)"], ["(q;q)"], (2, 2, 3), a="q", lemma_factor=product([], ["(q^2;q^2)_1"]), q_scale=2),
    entry("PNS223", "n^2+2r^2+3nr", ["(q;q)_{n+r}"], ["(q;q)_{2n+2r}", "(q;q)_r", "(q;q)_n"],
          ["(q^5,q^6,q^11;q^11)"], ["(q;q)"], (2, 2, 3), q_scale=2, attribution="due to S. O. Warnaar"),
    entry("PNS124-2", "2n^2+2n+4nr+4r^2+4r", [], ["(-q;q)_{2r+1}", "(q^2;q^2)_n", "(q^2;q^2)_r"],
          ["(q,q^10,q^11;q^11)"], ["(q^2;q^2)"], (1, 2, 4), a="q", lemma_factor=product(["(q;q)_1"], ["(q^2;q^2)_1"])),
    entry("PNS133-2", "3n^2+6nr+4r^2+3n+4r", ["(q;q)_{n+r}", "(q;q)_{2n+3r+1}", "(q;q)_{n+2r+1}"],
          ["(q^3;q^3)_{n+r}", "(q^3;q^3)_{n+2r+1}", "(q;q)_n", "(q;q)_r", "(q;q)_{2n+2r+1}"],
          ["(q,q^10,q^11;q^11)"], ["(q^3;q^3)"], (1, 3, 3), a="q", lemma_factor=product(["(q;q)_1"], ["(q^3;q^3)_1"])),
    entry("PNS133", "3n^2+6nr+4r^2", ["(q;q)_{n+r}", "(q;q)_{2n+3r}", "(q;q)_{n+2r}"],
          ["(q^3;q^3)_{n+r}", "(q^3;q^3)_{n+2r}", "(q;q)_n", "(q;q)_r", "(q;q)_{2n+2r}"],
          ["(q^5,q^6,q^11;q^11)"], ["(q^3;q^3)"], (1, 3, 3)),
    entry("PNS142", "5n^2+8nr+4r^2", ["(iq;q)_{n+r}", "(q;q)_{n+r}", "(iq;q)_{2n+3r}"], DEN142,
          ["(q^5,q^6,q^11;q^11)"], ["(q^4;q^4)"], (1, 4, 2), units=I_N),
    entry("ATNS144", "2n^2+4nr+4r^2", ["(-q^2;q^4)_{n+r}"],
          ["(-q^2;q^2)_{2n+2r}", "(q^2;q^2)_r", "(-q;q)_{2r}", "(q^4;q^4)_n"],
          ["(q^5,q^6,q^11;q^11)", "(-q^2;q^4)"], ["(q^4;q^4)"], (1, 4, 4), rho2=HALF),
    entry("ATNS163", "3n^2+6nr+6r^2", ["(-q^3;q^6)_{n+r}", "(q^2;q^2)_{3n+2r}"],
          ["(q^6;q^6)_{2n+2r}", "(q^2;q^2)_r", "(-q;q)_{2r}", "(q^6;q^6)_n"],
          ["(q^5,q^6,q^11;q^11)", "(-q^3;q^6)"], ["(q^6;q^6)"], (1, 6, 3), units=SIGN_R, rho2=HALF),
    entry("PNS224-2", "n^2+2r^2+2nr+2n+3r", ["(q;q)_{n+r+1}"], ["(q;q)_{2n+2r+2}", "(q;q)_r", "(q;q)_n"],
          ["(q,q^12,q^13;q^13)"], ["(q;q)"], (2, 2, 4), a="q", lemma_factor=product([], ["(q^2;q^2)_1"]), q_scale=2),
    entry("PNS224", "n^2+2r^2+2nr", ["(q;q)_{n+r}"], ["(q;q)_{2n+2r}", "(q;q)_r", "(q;q)_n"],
          ["(q^6,q^7,q^13;q^13)"], ["(q;q)"], (2, 2, 4), q_scale=2, attribution="due to G. E. Andrews"),
    entry("PNS143", "4n^2+8nr+5r^2", ["(iq;q)_{n+r}", "(q;q)_{n+r}", "(iq;q)_{2n+3r}"], DEN142,
          ["(q^6,q^7,q^13;q^13)"], ["(q^4;q^4)"], (1, 4, 3)),
    entry("ATNS164", "3n^2+6nr+5r^2", ["(-q^3;q^6)_{n+r}", "(q^2;q^2)_{3n+2r}"],
          ["(q^6;q^6)_{2n+2r}", "(q^2;q^2)_r", "(-q;q)_{2r}", "(q^6;q^6)_n"],
          ["(q^6,q^7,q^13;q^13)", "(-q^3;q^6)"], ["(q^6;q^6)"], (1, 6, 4), rho2=HALF),
    entry("ATNS223", "n^2+3r^2+4nr", ["(-q;q^2)_{n+r}", "(q^2;q^2)_{n+r}"],
          ["(q^2;q^2)_{2n+2r}", "(q^2;q^2)_r", "(q^2;q^2)_n"],
          ["(q^6,q^8,q^14;q^14)", "(-q;q^2)"], ["(q^2;q^2)"], (2, 2, 3), rho2=HALF),
    entry("ATNS142", "6n^2+8nr+4r^2",
          ["(-q^4;q^8)_{n+r}", "(iq^2;q^2)_{n+r}", "(q^2;q^2)_{n+r}", "(iq^2;q^2)_{2n+3r}"], DEN142_2,
          ["(q^6,q^8,q^14;q^14)", "(-q^4;q^8)"], ["(q^8;q^8)"], (1, 4, 2), units=I_N, rho2=HALF, q_scale="1/2"),
    entry("PNS135-2", "3n^2+6nr+6r^2+3n+6r", ["(q;q)_{3r+1}"],
          ["(q^3;q^3)_{2r+1}", "(q^3;q^3)_r", "(q^3;q^3)_n"],
          ["(q,q^14,q^15;q^15)"], ["(q^3;q^3)"], (1, 3, 5), a="q", lemma_factor=product(["(q;q)_1"], ["(q^3;q^3)_1"])),
    entry("PNS135", "3n^2+6nr+6r^2", ["(q;q)_{3r}"], ["(q^3;q^3)_{2r}", "(q^3;q^3)_r", "(q^3;q^3)_n"],
          ["(q^7,q^8,q^15;q^15)"], ["(q^3;q^3)"], (1, 3, 5)),
    entry("PNS144-2", "4n^2+8nr+6r^2+4n+6r", [],
          ["(-q^2;q^2)_{2n+2r+1}", "(q^2;q^2)_r", "(-q;q)_{2r+1}", "(q^4;q^4)_n"],
          ["(q,q^14,q^15;q^15)"], ["(q^4;q^4)"], (1, 4, 4), a="q", lemma_factor=product(["(q;q)_1"], ["(q^4;q^4)_1"])),
    entry("PNS144", "4n^2+8nr+6r^2", [], ["(-q^2;q^2)_{2n+2r}", "(q^2;q^2)_r", "(-q;q)_{2r}", "(q^4;q^4)_n"],
          ["(q^7,q^8,q^15;q^15)"], ["(q^4;q^4)"], (1, 4, 4)),
    entry("ATNS133", "3n^2+6nr+5r^2",
          ["(-q^3;q^6)_{n+r}", "(q^2;q^2)_{n+r}", "(q^2;q^2)_{2n+3r}", "(q^2;q^2)_{n+2r}"],
          ["(q^6;q^6)_{n+r}", "(q^6;q^6)_{n+2r}", "(q^2;q^2)_n", "(q^2;q^2)_r", "(q^2;q^2)_{2n+2r}"],
          ["(q^7,q^9,q^16;q^16)", "(-q^3;q^6)"], ["(q^6;q^6)"], (1, 3, 3), rho2=HALF, q_scale="1/2"),
    entry("PNS222-2", "3n^2+4n+4nr+5/2r^2+7/2r", [],
          ["(-q;q)_{2n+2r+2}", "(q;q)_r", "(q;q^2)_{r+1}", "(q^2;q^2)_n"],
          ["(q^2,q^16,q^18;q^18)"], ["(q^2;q^2)"], (2, 2, 2), units=SIGN_N, a="q^2", lemma_factor=product([], ["(q^4;q^4)_1"])),
    entry("PNS222", "3n^2+4nr+5/2r^2-1/2r", [], ["(-q;q)_{2n+2r}", "(q;q)_r", "(q;q^2)_r", "(q^2;q^2)_n"],
          ["(q^8,q^10,q^18;q^18)"], ["(q^2;q^2)"], (2, 2, 2), units=SIGN_N),
    entry("ATNS143", "4n^2+8nr+6r^2",
          ["(-q^4;q^8)_{n+r}", "(iq^2;q^2)_{n+r}", "(q^2;q^2)_{n+r}", "(iq^2;q^2)_{2n+3r}"], DEN142_2,
          ["(q^8,q^10,q^18;q^18)", "(-q^4;q^8)"], ["(q^8;q^8)"], (1, 4, 3), rho2=HALF, q_scale="1/2"),
    entry("ATNS224", "n^2+2nr+3r^2", ["(-q;q^2)_{n+r}", "(q^2;q^2)_{n+r}"],
          ["(q^2;q^2)_{2n+2r}", "(q^2;q^2)_r", "(q^2;q^2)_n"],
          ["(q^8,q^10,q^18;q^18)", "(-q;q^2)"], ["(q^2;q^2)"], (2, 2, 4), rho2=HALF),
    entry("SS215", "1/2n^2+1/2n+nr+3/2r^2+1/2r", ["(-1;q)_{n+r}"], ["(q;q)_n", "(q;q)_r", "(q;q^2)_r"],
          ["(q^9,q^9,q^18;q^18)", "(-q;q)"], ["(q;q)"], (2, 1, 5), rho2="-1"),
    entry("ATNS225", "n^2+2r^2+2nr", ["(-q;q^2)_{n+r}"], ["(-q;q)_{2n+2r}", "(q;q^2)_r", "(q;q)_r", "(q^2;q^2)_n"],
          ["(q^10,q^12,q^22;q^22)", "(-q;q^2)"], ["(q^2;q^2)"], (2, 2, 5), rho2=HALF,
          source_typo="printed with (q;q)_n in the denominator; the identity needs (q^2;q^2)_n"),
    entry("ATNS135", "3n^2+6nr+9r^2", ["(-q^3;q^6)_{n+r}", "(q^2;q^2)_{3r}"],
          ["(q^6;q^6)_{2r}", "(q^6;q^6)_r", "(q^6;q^6)_n"],
          ["(q^11,q^13,q^24;q^24)", "(-q^3;q^6)"], ["(q^6;q^6)"], (1, 3, 5), rho2=HALF, q_scale="1/2"),
    entry("PNS225-2", "2n^2+3r^2+4nr+4n+6r", [], ["(-q;q)_{2n+2r+2}", "(q;q^2)_{r+1}", "(q;q)_r", "(q^2;q^2)_n"],
          ["(q^2,q^28,q^30;q^30)"], ["(q^2;q^2)"], (2, 2, 5), a="q^2", lemma_factor=product([], ["(q^4;q^4)_1"])),
    entry("PNS225", "2n^2+3r^2+4nr", [], ["(-q;q)_{2n+2r}", "(q;q^2)_r", "(q;q)_r", "(q^2;q^2)_n"],
          ["(q^14,q^16,q^30;q^30)"], ["(q^2;q^2)"], (2, 2, 5)),
    entry("ATNS215", "n^2+2nr+3r^2", ["(-q;q^2)_{n+r}"], ["(q^2;q^2)_n", "(q^2;q^2)_r", "(q^2;q^4)_r"],
          ["(q^16,q^20,q^36;q^36)", "(-q;q^2)"], ["(q^2;q^2)"], (2, 1, 5), rho2=HALF, q_scale="1/2"),
    entry("SS417", "1/2n^2+1/2n+2r^2", ["(-1;q)_n"], ["(q;q^2)_n", "(q^2;q^2)_r", "(q^2;q^4)_r", "(q;q)_{n-2r}"],
          ["(q^22,q^22,q^44;q^44)", "(-q;q)"], ["(q;q)"], (4, 1, 7), rho2="-1", source_typo=TYPO),
    entry("PNS417-2", "n^2+2r^2+4n+4r", [],
          ["(q;q^2)_{n+2}", "(q^2;q^2)_r", "(q^2;q^4)_{r+1}", "(q;q)_{n-2r}"],
          ["(q^4,q^56,q^60;q^60)"], ["(q;q)"], (4, 1, 7), a="q^4", source_typo=TYPO, lemma_factor=product([], ["(q;q)_3"])),
    entry("PNS417", "n^2+2r^2", [], ["(q;q^2)_n", "(q^2;q^2)_r", "(q^2;q^4)_r", "(q;q)_{n-2r}"],
          ["(q^28,q^32,q^60;q^60)"], ["(q;q)"], (4, 1, 7), source_typo=TYPO),
    entry("PNS327", "2n^2+4nr+3r^2+6n+9r", ["(q^3;q^3)_r"],
          ["(-q;q)_{2n+2r+3}", "(q;q)_{2r+2}", "(q;q)_r", "(q^2;q^2)_n"],
          ["(q^3,q^60,q^63;q^63)"], ["(q^2;q^2)"], (3, 2, 7), a="q^3", lemma_factor=product(["(q^3;q^3)_1"], ["(q^2;q^2)_2", "(q^6;q^6)_1"])),
    entry("PNS337", "3n^2+4r^2+6nr+9n+12r", ["(q^3;q^3)_r", "(q;q)_{3n+2r+3}"],
          ["(q^3;q^3)_{2n+2r+3}", "(q;q)_r", "(q;q)_{2r+2}", "(q^3;q^3)_n"],
          ["(q^3,q^78,q^81;q^81)"], ["(q^3;q^3)"], (3, 3, 7), a="q^3", lemma_factor=product([], ["(q^6;q^6)_1", "(q^9;q^9)_1"])),
    entry("ATNS417", "n^2+4r^2", ["(-q;q^2)_n"], ["(q^2;q^4)_n", "(q^4;q^4)_r", "(q^4;q^8)_r", "(q^2;q^2)_{n-2r}"],
          ["(q^40,q^48,q^88;q^88)", "(-q;q^2)"], ["(q^2;q^2)"], (4, 1, 7), rho2=HALF, q_scale="1/2"),
]


def main():
    root = Path(__file__).resolve().parents[2]
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--output", type=Path, default=root / "data" / "identities.json")
    args = ap.parse_args()
    ids = [e["id"] for e in IDENTITIES]
    assert len(ids) == len(set(ids)), "duplicate ids"
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(json.dumps({"identities": IDENTITIES}, indent=1) + "\n")
    print(f"wrote {len(IDENTITIES)} identities to {args.output}")


if __name__ == "__main__":
    main()
