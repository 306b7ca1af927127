"""Expression corpora used by the engine, certificate and acceptance tests."""

from __future__ import annotations

from arithmos.verdict import ALGIRR, RAT, TRANS

# (expression, expected natures, expected nonzero flag or None, exact value or None)
THEOREM_CORPUS = [
    ("2^sqrt(2)", {TRANS}, "YES", None),
    ("e^pi", {TRANS}, "YES", None),
    ("sin(1)", {TRANS}, "YES", None),
    ("cos(1)", {TRANS}, "YES", None),
    ("sinh(1)", {TRANS}, "YES", None),
    ("cosh(1)", {TRANS}, "YES", None),
    ("ln(2)", {TRANS}, "YES", None),
    ("atan(1/2)/pi", {TRANS}, "YES", None),
    ("atan(1)/pi", {RAT}, "YES", "1/4"),
    ("acos(1/3)/pi", {RAT, TRANS}, None, None),
    ("cos(sqrt(2)*pi)", {TRANS}, "YES", None),
    ("sin(sqrt(2)*pi)", {TRANS}, "YES", None),
    ("tan(sqrt(2)*pi)", {TRANS}, "YES", None),
    ("cos(ln(2))", {TRANS}, "YES", None),
    ("sin(ln(2))", {TRANS}, "YES", None),
    ("tan(ln(2))", {TRANS}, "YES", None),
    ("cosh(ln(pi))", {TRANS}, "YES", None),
    ("sinh(ln(pi))", {TRANS}, "YES", None),
    ("tanh(ln(pi))", {TRANS}, "YES", None),
    ("exp(1 + pi)", {TRANS}, "YES", None),
    ("(1 + ln(2))/pi", {TRANS}, "YES", None),
    ("ln(2) + ln(3) - ln(5)", {TRANS}, "YES", None),
    ("ln(2) + ln(3) - ln(6)", {RAT}, None, "0"),
    ("1*ln(pi) - 1*pi", None, "YES", None),
    ("ln(pi) - (3/2)*sqrt(2)*pi", None, "YES", None),
]

THEOREM_SETS = [
    (["pi + e", "pi*e"], 1, "TRANS", ["pi + e", "pi*e"]),
    (["pi + e", "pi*e", "ln(pi)"], 2, "TRANS", ["ln(pi)", "pi + e", "pi*e"]),
]

# further expressions exercising the rest of the catalog; verdicts follow
# from the same lemmas, checked here only for soundness and replay
EXTRA_CORPUS = [
    "exp(sqrt(2))", "exp(i)", "ln(1 + sqrt(2))", "3^(1/3 + sqrt(5))", "(1+i)^sqrt(3)",
    "exp(2) + 3*exp(sqrt(3))", "ln(2)/ln(3)", "ln(4)/ln(8)", "atan(3)/pi", "asin(1/3)/pi",
    "acos(1/2)/pi", "asec(2)/pi", "cos(pi/5)", "sin(pi/7)", "tan(pi/8)", "cos(sqrt(3)*pi)",
    "exp(pi*sqrt(2))", "2^sqrt(2)*3^sqrt(3)", "e*2^sqrt(2)", "(2 + ln(3))/pi",
    "2*pi + 3/pi", "pi*(1 - pi)", "cosh(2*ln(pi))", "tanh(-ln(pi)/2)", "sec(ln(3))", "cot(ln(5))",
    "2*ln(pi) + ln(3) - pi", "ln(pi) + pi", "sqrt(2) + sqrt(3)", "sqrt(3 + 2*sqrt(2))",
    "pi^2", "1/e", "e + sqrt(2)", "ln(-1)", "exp(i*pi/3)", "ln(2)*ln(3)", "pi + e", "pi*e",
    "ln(pi)", "2 + sqrt(7)", "exp(1/2)*sqrt(pi)", "sinh(sqrt(2))", "sin(1)^2 + cos(1)^2",
]

# expressions whose exact value is 0; none may ever be certified nonzero
ZERO_IDENTITIES = [
    "ln(2) + ln(3) - ln(6)", "ln(4) - 2*ln(2)", "ln(8) - 3*ln(2)", "ln(2/3) + ln(3/2)",
    "sqrt(2)*sqrt(3) - sqrt(6)", "(sqrt(2) + sqrt(3))^2 - 5 - 2*sqrt(6)", "sqrt(3 + 2*sqrt(2)) - 1 - sqrt(2)",
    "2^(1/2) - sqrt(2)", "8^(1/3) - 2", "(sqrt(5) - 1)*(sqrt(5) + 1) - 4", "i^2 + 1",
    "atan(1) - pi/4", "asin(1/2) - pi/6", "acos(0) - pi/2", "acos(1/2)/pi - 1/3",
    "cos(pi/3) - 1/2", "sin(pi/6) - 1/2", "tan(pi/4) - 1", "cos(pi) + 1", "sin(pi)",
    "ln(-1) - i*pi", "exp(i*pi) + 1", "exp(ln(2)) - 2", "exp(ln(pi)) - pi",
    "cosh(0) - 1", "(pi + e) - (e + pi)", "pi*e - e*pi", "ln(e) - 1", "sqrt(8) - 2*sqrt(2)",
    "ln(9)/ln(3) - 2",
]
