"""Rule catalog metadata: identifier, display name, source label, anchor quote, guard summary.

The source labels and quotes are the citation strings shown by
``arithmos rules`` and embedded in certificates.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class RuleInfo:
    id: str
    name: str
    source: str
    quote: str
    guard: str
    kind: str = "verdict"  # verdict | disjunctive | plumbing

    @property
    def anchor(self) -> str:
        return f"{self.source} — {self.quote}"


_ROWS = [
    RuleInfo("CL1", "rational literal", "Introduction", "all rational numbers are algebraic",
             "rational literal ⇒ {RAT}"),
    RuleInfo("CL2", "algebraic evaluation", "Footnote (field closure)", "A is a field",
             "structurally algebraic expression with computed minimal polynomial ⇒ {RAT} or {ALGIRR}"),
    RuleInfo("CL3", "transcendental closure", "Footnote (field closure)", "transcendental for all rational",
             "t {TRANS}, α ALG: t+α, α·t (α≠0), t/α, α/t, t^r (r rational ≠ 0) ⇒ {TRANS}"),
    RuleInfo("CL4", "field closure", "Footnote (field closure)", "A is a field",
             "all children have exact algebraic values ⇒ exact algebraic value"),
    RuleInfo("B1", "Euler's number", "Introduction", "e is transcendental", "Const E ⇒ {TRANS}"),
    RuleInfo("B2", "pi", "Remark after Lemma 1", "implies the transcendence of", "Const PI ⇒ {TRANS}"),
    RuleInfo("B3", "imaginary unit", "Definition", "root of x^2 + 1", "Const I ⇒ {ALGIRR}"),
    RuleInfo("R-HL-EXP", "Hermite–Lindemann", "Lemma 1", "transcendental for all algebraic",
             "exp(u), u ALG ≠ 0 ⇒ {TRANS}"),
    RuleInfo("R-HL-LN", "Hermite–Lindemann, logarithmic form", "Remark after Lemma 1",
             "equivalent to the transcendence of ln α", "ln(u), u ALG ∉ {0, 1} ⇒ {TRANS}"),
    RuleInfo("R-LW-SUM", "Lindemann–Weierstrass", "Corollary 1", "is a transcendental number",
             "Σ βₖ·exp(αₖ), distinct nonzero ALG αₖ, ALG βₖ not all zero ⇒ {TRANS}"),
    RuleInfo("R-LW-TRIG", "Lindemann–Weierstrass, circular and hyperbolic", "Corollary 2",
             "cos α, sin α, cosh α, and sinh α", "sin/cos/sinh/cosh of ALG u ≠ 0 ⇒ {TRANS}"),
    RuleInfo("R-GS", "Gelfond–Schneider", "Lemma 3", "any value of α^β is transcendental",
             "u^v, u ALG ∉ {0, 1}, v ALG irrational ⇒ {TRANS}"),
    RuleInfo("R-LOGRATIO", "Gelfond–Schneider, ratio of logarithms", "Lemma 4", "transcendental whenever",
             "ln(u)/ln(v), u, v ALG nonzero, v ≠ 1 ⇒ {RAT, TRANS}; exact for positive rationals"),
    RuleInfo("R-ARCTAN", "arctangent quotient", "Corollary 3", "x is rational and x ≠ 0, ±1",
             "arctan(x)/π, x rational ∉ {0, ±1} ⇒ {TRANS}"),
    RuleInfo("R-ARCTRIG", "inverse trigonometric quotient", "Theorem 1", "either rational or transcendental",
             "arctrig(x)/π, x real ALG in the real domain ⇒ {RAT, TRANS}; exact-angle table ⇒ {RAT}"),
    RuleInfo("R-TRIGPI", "trigonometric functions at algebraic multiples of π", "Remark after Theorem 1",
             "transcendence of trig(√2 π)",
             "trig(α·π): α rational ⇒ algebraic; α ALG irrational ⇒ {TRANS}"),
    RuleInfo("R-BAKER-LIN", "Baker, linear forms in logarithms", "Corollary 4", "either null or transcendental",
             "Σ βₖ·ln(αₖ), βₖ ALG, αₖ ALG nonzero ⇒ {RAT, TRANS} with RAT only if zero; "
             "{TRANS} for multiplicatively independent positive rational αₖ"),
    RuleInfo("R-BAKER-PROD", "Baker, exponential times powers", "Corollary 5",
             "e^{β₀} α₁^{β₁} … αₙ^{βₙ} is transcendental", "all parameters ALG nonzero ⇒ {TRANS}"),
    RuleInfo("R-BAKER-PROD2", "Baker, products of powers", "Corollary 6", "other than 0 or 1",
             "Π αₖ^βₖ, αₖ ALG ∉ {0, 1}, 1, β₁, …, βₙ linearly independent over Q ⇒ {TRANS}"),
    RuleInfo("R-BAKER-EXP", "Baker, exp(α + πβ)", "Corollary 7", "without exceptions",
             "exp(α + π·β), α, β ALG, α ≠ 0, or α = 0 with i·β ∉ Q ⇒ {TRANS}"),
    RuleInfo("R-ALNB-PI", "Baker, (α + ln β)/π", "Footnote after Corollary 7", "transcendence of (α + ln β)/π",
             "(α + γ·ln β)/π, α, β, γ ALG nonzero ⇒ {TRANS}"),
    RuleInfo("R-SUMPROD", "sum or product", "Theorem 2", "at least one of the numbers",
             "u, v {TRANS} ⇒ at least 1 of {u+v, u·v} TRANS", "disjunctive"),
    RuleInfo("R-QUAD", "non-quadratic pair", "Lemma 7", "which is not quadratic",
             "u {TRANS} or ALG of degree > 2 ⇒ at least 1 of {u+v, u·v} irrational", "disjunctive"),
    RuleInfo("R-1OF3", "two of three", "Theorem 3", "at least two of the numbers",
             "t {TRANS}, t ≠ 1/e ⇒ at least 2 of {t+e, t·e, ln t} TRANS", "disjunctive"),
    RuleInfo("R-INVT", "transcendental pairs", "Corollary 8", "are both transcendental",
             "u {TRANS}: u·v ALG ⇒ u+v {TRANS}; u+v ALG ⇒ u·v {TRANS}"),
    RuleInfo("R-COSH", "hyperbolic functions of logarithms", "Theorem 5", "cosh(r ln t), and sinh(r ln t)",
             "cosh/sinh(r·ln t), r rational ≠ 0, t {TRANS} ⇒ {TRANS}"),
    RuleInfo("R-TANH", "hyperbolic tangent of logarithms", "Theorem 6", "tanh(r ln t) is transcendental",
             "tanh(r·ln t), r rational ≠ 0, t {TRANS} ⇒ {TRANS}"),
    RuleInfo("R-COS-LN", "cosine and sine of logarithms", "Theorem 7", "cos(β ln α) and sin(β ln α)",
             "cos/sin/sec/csc(β·ln α), α ALG ∉ {0, 1}, β ALG, i·β ∉ Q ⇒ {TRANS}"),
    RuleInfo("R-TAN-LN", "tangent of logarithms", "Theorem 8", "tan(β ln α) is transcendental",
             "tan/cot(β·ln α), α ALG ∉ {0, 1}, β ALG, i·β ∉ Q ⇒ {TRANS}"),
    RuleInfo("R-LNPI", "logarithm of π against π", "Theorem 9", "holds for all non-negative integers",
             "q·ln π + ln r − p·√n·π, integers p, q ≥ 0 not both 0, n ≥ 1, r rational > 0 ⇒ nonzero"),
    RuleInfo("R-LNPI-LI", "ln π and √n·π independent", "Corollary 9", "linearly independent over Q",
             "a·ln π + b·√n·π, rationals a, b not both 0 ⇒ nonzero"),
    RuleInfo("R-NZ-UPGRADE", "nonzero upgrade", "invented", "zero-or-transcendental plus a certified nonzero ball",
             "{RAT, TRANS} with RAT only if zero, ball excludes 0 ⇒ {TRANS}", "plumbing"),
    RuleInfo("MEET", "intersection", "invented", "verdicts of independent rules intersect",
             "several conclusions on one subject ⇒ their intersection", "plumbing"),
    RuleInfo("PROP", "disjunctive propagation", "invented", "members excluded from the class force the rest",
             "at least k of S in class N, |S| − m = k remaining ⇒ remaining members in N", "plumbing"),
    RuleInfo("HYPOTHESIS", "hypothesis", "invented", "injected in hypothetical mode only",
             "assumed fact; never valid outside hypothetical replay", "plumbing"),
    RuleInfo("NO-RULE", "no applicable rule", "invented", "no rule fired",
             "nothing known ⇒ {RAT, ALGIRR, TRANS}", "plumbing"),
]

RULES: dict[str, RuleInfo] = {r.id: r for r in _ROWS}


def anchor_for(rule_id: str) -> str:
    return RULES[rule_id].anchor
