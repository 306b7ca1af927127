"""Random expression generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

_FUNCS = ["exp", "ln", "sqrt", "sin", "cos", "tan", "sec", "csc", "cot",
          "asin", "acos", "atan", "asec", "acsc", "acot", "sinh", "cosh", "tanh"]
_ATOMS = ["pi", "e", "i"]


def rational_text(rng: random.Random, span: int = 9) -> str:
    p = rng.randint(-span, span)
    q = rng.randint(1, 5)
    return str(p) if q == 1 else f"{p}/{q}"


def expr_text(rng: random.Random, depth: int = 3) -> str:
    """Random expression source over the full grammar (may be ill-defined)."""
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice(_ATOMS) if rng.random() < 0.4 else f"({rational_text(rng)})"
    k = rng.random()
    if k < 0.45:
        op = rng.choice(["+", "-", "*", "/", "^"])
        left = expr_text(rng, depth - 1)
        right = f"({rational_text(rng, 3)})" if op == "^" and rng.random() < 0.7 else expr_text(rng, depth - 1)
        return f"({left}{op}{right})"
    if k < 0.55:
        return f"-({expr_text(rng, depth - 1)})"
    return f"{rng.choice(_FUNCS)}({expr_text(rng, depth - 1)})"


def radical_tower(rng: random.Random, depth: int = 2) -> str:
    """A sum/product of nested square roots of small positive rationals.

    Kept small enough that the minimal polynomial stays at degree <= 8.
    """
    def leaf():
        return str(rng.randint(1, 12)) if rng.random() < 0.6 else f"{rng.randint(1, 9)}/{rng.randint(2, 7)}"

    def sqrtish(d):
        if d <= 0 or rng.random() < 0.5:
            return f"sqrt({leaf()})"
        return f"sqrt({leaf()} + {sqrtish(d - 1)})"

    parts = [sqrtish(depth)]
    ops = ["+", "-", "*"]
    if rng.random() < 0.7:
        parts.append(rng.choice(ops))
        parts.append(f"sqrt({leaf()})" if rng.random() < 0.7 else leaf())
    if rng.random() < 0.3:
        parts.append(rng.choice(["+", "*"]))
        parts.append(leaf())
    return " ".join(parts)


def rand_fraction(rng: random.Random, span: int = 50) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


# ------------------------------------------------------- certificate tampering


def _nodes(d: dict, path=()):
    yield path, d
    for k, p in enumerate(d.get("premises", [])):
        yield from _nodes(p, path + (k,))


def _at(d: dict, path):
    for k in path:
        d = d["premises"][k]
    return d


_NATURE_SETS = [["RAT"], ["ALGIRR"], ["TRANS"], ["RAT", "ALGIRR"], ["RAT", "TRANS"],
                ["ALGIRR", "TRANS"], ["RAT", "ALGIRR", "TRANS"]]


MUTATION_KINDS = ("verdict", "nonzero", "rule", "subject", "evidence", "drop-premise", "swap-premise")


def mutate_certificate(d: dict, rng: random.Random, kinds=MUTATION_KINDS) -> tuple[str, dict]:
    """Return (description, tampered copy) of a certificate dict; the copy always differs."""
    import copy
    import json

    from arithmos.anchors import RULES

    from arithmos.certificate import Certificate

    def normal(x):
        # serialized form after the verdict normalization a reader applies
        return json.dumps(Certificate.from_dict(x).to_dict(), sort_keys=True)

    original = normal(d)
    while True:
        m = copy.deepcopy(d)
        path, node = rng.choice(list(_nodes(m)))
        node = _at(m, path)
        kind = rng.choice(kinds)
        if kind == "verdict":
            node["verdict"]["natures"] = rng.choice(_NATURE_SETS)
            if "RAT" not in node["verdict"]["natures"]:
                node["verdict"]["nonzero"] = "YES"
        elif kind == "nonzero":
            node["verdict"]["nonzero"] = "UNKNOWN" if node["verdict"]["nonzero"] == "YES" else "YES"
        elif kind == "rule":
            rid = rng.choice(list(RULES))
            node["rule"], node["anchor"] = rid, RULES[rid].anchor
        elif kind == "subject":
            node["subject"] = rng.choice(["pi", "e", "2", "sqrt(2)", "ln(3)", node["subject"] + " + 1"])
        elif kind == "evidence":
            if not node["evidence"]:
                node["evidence"]["note"] = "forged"
            else:
                key = rng.choice(sorted(node["evidence"]))
                node["evidence"][key] = "forged"
        elif kind == "drop-premise":
            if not node["premises"]:
                continue
            node["premises"].pop(rng.randrange(len(node["premises"])))
        elif kind == "swap-premise":
            if len(node["premises"]) < 2:
                continue
            i, j = rng.sample(range(len(node["premises"])), 2)
            ps = node["premises"]
            if ps[i] == ps[j]:
                continue
            ps[i], ps[j] = ps[j], ps[i]
        try:
            tampered = normal(m)
        except Exception:
            continue
        if tampered != original:
            return f"{kind} at {'/'.join(map(str, path)) or 'root'}", m


# ----------------------------------------------------- zero / nonzero pairs


def _pos(rng: random.Random) -> str:
    return str(rng.randint(2, 30)) if rng.random() < 0.7 else f"({rng.randint(1, 20)}/{rng.randint(2, 9)})"


def zero_identity(rng: random.Random) -> str:
    """An algebraic expression that is exactly 0 (by a radical identity)."""
    a, b = _pos(rng), _pos(rng)
    p, q = rng.randint(1, 9), rng.randint(2, 30)
    templates = [
        f"sqrt({a})*sqrt({b}) - sqrt({a}*{b})",
        f"(sqrt({a}) + sqrt({b}))^2 - {a} - {b} - 2*sqrt({a}*{b})",
        f"(sqrt({a}) - sqrt({b}))*(sqrt({a}) + sqrt({b})) - {a} + {b}",
        f"sqrt({p * p + q} + 2*{p}*sqrt({q})) - {p} - sqrt({q})",
        f"({a}^(1/3))^3 - {a}",
        f"sqrt({a}^2*{b}) - {a}*sqrt({b})",
        f"1/(sqrt({q}) + {p}) - (sqrt({q}) - {p})/({q} - {p * p})" if q != p * p else f"sqrt({q})^2 - {q}",
    ]
    return rng.choice(templates)


def zero_or_nonzero(rng: random.Random) -> tuple[str, bool]:
    """(expression, is_zero): an identity, or one perturbed by a tiny rational."""
    z = zero_identity(rng)
    if rng.random() < 0.5:
        return z, True
    k = rng.randint(20, 180)
    return f"{z} {rng.choice('+-')} 1/(10^{k})", False
