#!/usr/bin/env python3
"""Regenerates the golden files under tests/golden from exact rational arithmetic.

Everything here is computed from joint distributions enumerated with
fractions.Fraction, without reusing any engine formula. Run from the repo
root:  python3 tests/oracles/golden.py
"""

from fractions import Fraction as F
from itertools import product
from pathlib import Path

GOLDEN = Path(__file__).resolve().parent.parent / "golden"


def odds(p):
    return p / (1 - p)


def delta1_from_probs(post, prior):
    """tanh(w/2) with w the log odds ratio, written as (r-1)/(r+1)."""
    if post == 1:
        return F(1)
    if post == 0:
        return F(-1)
    r = odds(post) / odds(prior)
    return (r - 1) / (r + 1)


def lam(d):
    return None if d == 1 else (1 + d) / (1 - d)


def conditionals_from_lambdas(l, lp):
    """p(E|H), p(E|~H) reproducing lambda pair (l, lp)."""
    return l * (1 - lp) / (l - lp), (1 - lp) / (l - lp)


def observation_model(u):
    """p(E'|E), p(E'|~E) whose likelihood ratio is lambda(u)."""
    if u == 1:
        return F(1), F(0)
    if u == -1:
        return F(0), F(1)
    le = lam(u)
    if le >= 1:
        return F(1, 2), F(1, 2) / le
    return le / 2, F(1, 2)


class Tree:
    """Binary tree net: parent[child] and cond[child] = (p(c|parent), p(c|~parent))."""

    def __init__(self, root, root_prior, rules):
        self.root = root
        self.root_prior = root_prior
        self.parent = {c: h for c, h, _ in rules}
        self.cond = {c: pq for c, _, pq in rules}
        self.nodes = [root] + [c for c, _, _ in rules]

    def below(self, n):
        out = [n]
        for c, h in self.parent.items():
            if h == n:
                out += self.below(c)
        return out

    def joint(self, soft):
        """Rows (assignment, mass); soft maps leaf -> (p(o|leaf), p(o|~leaf))."""
        names = self.nodes + [x + "'" for x in soft]
        for values in product([False, True], repeat=len(names)):
            a = dict(zip(names, values))
            m = self.root_prior if a[self.root] else 1 - self.root_prior
            for c, h in self.parent.items():
                pt, pf = self.cond[c]
                pc = pt if a[h] else pf
                m *= pc if a[c] else 1 - pc
            for x, (pt, pf) in soft.items():
                po = pt if a[x] else pf
                m *= po if a[x + "'"] else 1 - po
            yield a, m

    def prob(self, soft, query, given):
        num = den = F(0)
        for a, m in self.joint(soft):
            if all(a[k] == v for k, v in given.items()):
                den += m
                if a[query]:
                    num += m
        return num / den

    def node_updates(self, findings):
        """delta1 update of every node given the findings beneath it.

        findings: leaf -> update in [-1, 1]; +-1 are certain, others soft.
        """
        soft = {x: observation_model(u) for x, u in findings.items() if abs(u) != 1}
        certain = {x: u == 1 for x, u in findings.items() if abs(u) == 1}
        out = {}
        for n in self.nodes:
            sub = set(self.below(n))
            given = {k: v for k, v in certain.items() if k in sub}
            given.update({k + "'": True for k in soft if k in sub})
            prior = self.prob(soft, n, {})
            post = self.prob(soft, n, given) if given else prior
            out[n] = delta1_from_probs(post, prior)
        return out


def mycin_parallel(a, b):
    if a == 1 or b == 1:
        return F(1)
    if a == -1 or b == -1:
        return F(-1)
    if a > 0 and b > 0:
        return a + b - a * b
    if a < 0 and b < 0:
        return a + b + a * b
    return (a + b) / (1 - min(abs(a), abs(b)))


def delta1_parallel(a, b):
    """Two conditionally independent pieces of evidence on a 1/2 prior."""
    ca = conditionals_from_delta(a)
    cb = conditionals_from_delta(b)
    t = F(1, 2) * ca[0] * cb[0]
    f = F(1, 2) * ca[1] * cb[1]
    return delta1_from_probs(t / (t + f), F(1, 2))


def conditionals_from_delta(d):
    """p(E|H), p(E|~H) for a single piece of evidence with update d."""
    if d == 1:
        return F(1, 2), F(0)
    if d == -1:
        return F(0), F(1, 2)
    l = lam(d)
    return (F(1, 2), F(1, 2) / l) if l >= 1 else (l / 2, F(1, 2))


def sequential_delta1(d, dn, u):
    """Chain H <- E <- E' with p(H) = 1/2, enumerated exactly."""
    if u == 0 or (d == 0 and dn == 0):
        return F(0)
    a, b = conditionals_from_lambdas(lam(d), lam(dn))
    tree = Tree("H", F(1, 2), [("E", "H", (a, b))])
    return tree.node_updates({"E": u})["H"]


def grid(n):
    return [F(2 * i - (n - 1), n - 1) for i in range(n)]


def g17(x):
    v = float(x)
    return "0" if v == 0 else repr(v)


def main():
    GOLDEN.mkdir(exist_ok=True)
    lines = []

    def put(name, value):
        lines.append(f"{name} {g17(value)}")

    # Figure-4 slice: first update 1/2, 10,001-point grid.
    half = F(1, 2)
    best, arg = F(-1), None
    for b in grid(10001):
        diff = abs(mycin_parallel(half, b) - delta1_parallel(half, b))
        if diff > best:
            best, arg = diff, b
    put("figure4_max_abs_diff", best)
    put("figure4_argmax", arg)
    put("figure4_mycin_at_m075", mycin_parallel(half, F(-3, 4)))
    put("figure4_delta1_at_m075", delta1_parallel(half, F(-3, 4)))

    # Figure-7 CSV at 201 points.
    n = 201
    rows = ["u,mycin,delta1_a05,delta1_a25,delta1_a90"]
    for u in grid(n):
        mycin = F(9, 10) * max(F(0), u)
        cols = [u, mycin] + [sequential_delta1(F(9, 10), dn, u)
                             for dn in (F(-5, 100), F(-25, 100), F(-9, 10))]
        rows.append(",".join(g17(c) for c in cols))
    (GOLDEN / "figure7_201.csv").write_text("\n".join(rows) + "\n")

    # Conversions.
    put("convert_delta1_post082_prior04", delta1_from_probs(F(82, 100), F(4, 10)))
    put("convert_orig_post082_prior04", (F(82, 100) - F(4, 10)) / (1 - F(4, 10)))

    # Elicitation from conditionals (0.6, 0.2) and (0.4, 0.8), prior-free.
    q = Tree("H", F(1, 2), [("E", "H", (F(6, 10), F(2, 10)))])
    put("elicit_present_delta1", delta1_from_probs(q.prob({}, "H", {"E": True}), F(1, 2)))
    put("elicit_absent_delta1", delta1_from_probs(q.prob({}, "H", {"E": False}), F(1, 2)))

    # Divergence near (+1, -1).
    eps = F(1, 10 ** 6)
    put("divergence_mycin_eps1e-6", mycin_parallel(1 - eps, -1 + eps / 2))
    put("divergence_delta1_eps1e-6", delta1_parallel(1 - eps, -1 + eps / 2))

    # Extrovert net under delta1 (priors are irrelevant to the updates).
    extro = Tree(
        "social-work", half,
        [("extrovert", "social-work", conditionals_from_lambdas(lam(F(4, 10)), lam(F(-4, 10)))),
         ("parties", "extrovert", conditionals_from_lambdas(lam(F(8, 10)), lam(F(-3, 10)))),
         ("backpacking", "extrovert", conditionals_from_lambdas(lam(F(-5, 10)), lam(F(2, 10))))])
    both = extro.node_updates({"parties": F(1), "backpacking": F(1)})
    put("extrovert_both_extrovert", both["extrovert"])
    put("extrovert_both_social_work", both["social-work"])
    back = extro.node_updates({"backpacking": F(1)})
    put("extrovert_backpacking_extrovert", back["extrovert"])
    put("extrovert_backpacking_social_work", back["social-work"])

    # Chain net: disease <- marker <- assay, soft finding 0.6 on assay.
    chain = Tree("disease", F(1, 10),
                 [("marker", "disease", conditionals_from_lambdas(F(6), F(1, 4))),
                  ("assay", "marker", conditionals_from_lambdas(F(9), F(1, 10)))])
    ch = chain.node_updates({"assay": F(6, 10)})
    for k in ("disease", "marker", "assay"):
        put(f"chain_assay_{k}", ch[k])
    put("chain_prior_marker", chain.prob({}, "marker", {}))
    put("chain_prior_assay", chain.prob({}, "assay", {}))

    # Fan-in net: wet-grass true, puddles false, clouds soft at 0.6.
    fan = Tree("rain", F(3, 10),
               [("wet-grass", "rain", (F(9, 10), F(3, 10))),
                ("clouds", "rain", (F(8, 10), F(4, 10))),
                ("puddles", "rain", (F(7, 10), F(1, 10)))])
    fu = fan.node_updates({"wet-grass": F(1), "clouds": F(6, 10), "puddles": F(-1)})
    put("fan_in_mixed_rain", fu["rain"])
    put("fan_in_prior_clouds", fan.prob({}, "clouds", {}))
    fc = fan.node_updates({"wet-grass": F(1), "clouds": F(1), "puddles": F(-1)})
    fan_post = fan.prob({}, "rain", {"wet-grass": True, "clouds": True, "puddles": False})
    put("fan_in_certain_rain_update", fc["rain"])
    put("fan_in_certain_rain_posterior", fan_post)

    (GOLDEN / "derived.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
