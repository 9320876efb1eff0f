"""Generalized Cartan matrices and Dynkin diagram recognition.

Recognition works by graph-isomorphism against a generated catalog of the
finite and affine diagrams (the affine ones are produced from their
simple-root recipes, so the catalog is self-checking).  Also houses the
Coxeter edge orders, the affine naming table, and the hypothesis checks for
finite presentability.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

INFINITE = math.inf

# canonical representatives of the duplicated diagrams: A~3 = D~3,
# C~2 = B~2, B~2^even = C~2^even (same convention as the usual tables),
# and finite A_3 = D_3, B_2 = C_2.
_SKIP_IN_CATALOG = {("B", 2, None, True), ("D", 3, None, True),
                    ("C", 2, "even", True), ("C", 2, None, False),
                    ("D", 3, None, False)}


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    rows: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def submatrix(self, nodes) -> "GeneralizedCartanMatrix":
        nodes = tuple(nodes)
        return GeneralizedCartanMatrix(
            tuple(tuple(self.rows[i][j] for j in nodes) for i in nodes),
            tuple(self.labels[i] for i in nodes),
        )

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        comps = []
        for start in range(self.rank):
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.rank):
                    if j not in seen and self.rows[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return comps


def gcm(rows, labels=None) -> GeneralizedCartanMatrix:
    """Validate and freeze a generalized Cartan matrix."""
    rows = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("Cartan matrix must be square")
    for i in range(n):
        if rows[i][i] != 2:
            raise ValueError(f"diagonal entry ({i},{i}) must be 2")
        for j in range(n):
            if i != j:
                if rows[i][j] > 0:
                    raise ValueError(f"off-diagonal entry ({i},{j}) must be <= 0")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) must vanish together")
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    return GeneralizedCartanMatrix(rows, tuple(labels))


def coxeter_order(a: GeneralizedCartanMatrix, i: int, j: int):
    """Order m_ij of the product of two Weyl generators: 2, 3, 4, 6 or infinity."""
    if i == j:
        raise ValueError("coxeter_order needs two distinct nodes")
    prod = a.rows[i][j] * a.rows[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod, INFINITE)


def two_spherical_no_a1(a: GeneralizedCartanMatrix) -> bool:
    """All m_ij finite and no connected component is a single node."""
    for i in range(a.rank):
        for j in range(i + 1, a.rank):
            if coxeter_order(a, i, j) is INFINITE:
                return False
    return all(len(c) > 1 for c in a.components())


# --------------------------------------------------------------------------
# diagram classes and labels


@dataclass(frozen=True)
class DiagramClass:
    """Recognized diagram: a finite or affine family member, or Other."""

    kind: str  # "finite" | "affine-untwisted" | "affine-twisted" | "other"
    family: str | None = None  # "A".."G" or "BC"
    n: int | None = None
    superscript: str | None = None  # None | "even" | "odd" | "0mod3"
    rank: int = 0

    @property
    def is_affine(self) -> bool:
        return self.kind.startswith("affine")

    def label(self) -> str:
        if self.kind == "other":
            return "Other"
        mark = "~" if self.is_affine else ""
        sup = f"^{self.superscript}" if self.superscript else ""
        return f"{self.family}{mark}{self.n}{sup}"

    def __str__(self) -> str:
        return self.label()


_LABEL_RE = re.compile(r"^(BC|[A-G])(~?)(\d+)(?:\^(even|odd|0mod3))?$")


def parse_label(text: str) -> DiagramClass:
    m = _LABEL_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse diagram label {text!r}")
    family, tilde, n, sup = m.group(1), m.group(2), int(m.group(3)), m.group(4)
    if not tilde:
        if sup:
            raise ValueError("superscripts only occur on affine labels")
        _check_finite_conditions(family, n)
        return DiagramClass("finite", family, n, None, n)
    _check_affine_conditions(family, n, sup)
    kind = "affine-twisted" if sup else "affine-untwisted"
    return DiagramClass(kind, family, n, sup, n + 1)


def _check_finite_conditions(family: str, n: int) -> None:
    ok = {
        "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 3,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2, "BC": n >= 1,
    }.get(family, False)
    if not ok:
        raise ValueError(f"no finite diagram {family}{n}")


def _check_affine_conditions(family: str, n: int, sup: str | None) -> None:
    if sup is None:
        ok = {
            "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 3,
            "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
        }.get(family, False)
    elif sup == "even":
        ok = (family in ("B", "C") and n >= 2) or (family, n) == ("F", 4)
    elif sup == "odd":
        ok = family == "BC" and n >= 1
    else:  # 0mod3
        ok = (family, n) == ("G", 2)
    if not ok:
        raise ValueError(f"no affine diagram {family}~{n}" + (f"^{sup}" if sup else ""))


# --------------------------------------------------------------------------
# finite Cartan matrix recipes (node orders documented in the README)


def finite_cartan(family: str, n: int) -> GeneralizedCartanMatrix:
    """Cartan matrix of the irreducible finite diagram.

    Chains are numbered 0..n-1.  B_n ends in the short root, C_n in the long
    root, D_n forks at node n-3, E_n attaches its last node to node 2,
    F_4 is long-long-short-short, G_2 is (short, long).
    """
    _check_finite_conditions(family, n)
    if family == "BC":
        raise ValueError("BC is not a Dynkin diagram family; use the B_n matrix")
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain_edge(i, j, aij=-1, aji=-1):
        rows[i][j], rows[j][i] = aij, aji

    if family == "A":
        for i in range(n - 1):
            chain_edge(i, i + 1)
    elif family == "B":
        for i in range(n - 2):
            chain_edge(i, i + 1)
        chain_edge(n - 2, n - 1, -1, -2)
    elif family == "C":
        for i in range(n - 2):
            chain_edge(i, i + 1)
        chain_edge(n - 2, n - 1, -2, -1)
    elif family == "D":
        for i in range(n - 3):
            chain_edge(i, i + 1)
        chain_edge(n - 3, n - 2)
        chain_edge(n - 3, n - 1)
    elif family == "E":
        for i in range(n - 2):
            chain_edge(i, i + 1)
        chain_edge(2, n - 1)
    elif family == "F":
        chain_edge(0, 1)
        chain_edge(1, 2, -1, -2)
        chain_edge(2, 3)
    elif family == "G":
        chain_edge(0, 1, -3, -1)
    return gcm(rows)


def affine_cartan(cls: DiagramClass) -> GeneralizedCartanMatrix:
    """Affine Cartan matrix built from the simple-root recipe of the label."""
    from . import roots as _roots

    if not cls.is_affine:
        raise ValueError("affine_cartan needs an affine label")
    ars = _roots.affine_system(cls)
    simples = _roots.simple_affine_roots(ars)
    n = len(simples)
    rows = [
        [ars.finite.pairing(x.coords, y.coords) for y in simples]
        for x in simples
    ]
    assert all(rows[i][i] == 2 for i in range(n))
    return gcm(rows)


# --------------------------------------------------------------------------
# catalog and recognition


@lru_cache(maxsize=None)
def catalog(max_rank: int = 12) -> tuple[tuple[DiagramClass, GeneralizedCartanMatrix], ...]:
    """All irreducible finite and affine diagrams up to the given node count."""
    entries: list[tuple[DiagramClass, GeneralizedCartanMatrix]] = []
    for family, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        for n in range(lo, max_rank + 1):
            if (family, n, None, False) in _SKIP_IN_CATALOG:
                continue
            entries.append((parse_label(f"{family}{n}"), finite_cartan(family, n)))
    for family, n in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)):
        if n <= max_rank:
            entries.append((parse_label(f"{family}{n}"), finite_cartan(family, n)))

    affine: list[str] = []
    for family, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        affine += [f"{family}~{n}" for n in range(lo, max_rank)]
    affine += ["E~6", "E~7", "E~8", "F~4", "G~2"]
    affine += [f"B~{n}^even" for n in range(2, max_rank)]
    affine += [f"C~{n}^even" for n in range(2, max_rank)]
    affine += [f"BC~{n}^odd" for n in range(1, max_rank)]
    affine += ["F~4^even", "G~2^0mod3"]
    for text in affine:
        cls = parse_label(text)
        if (cls.family, cls.n, cls.superscript, True) in _SKIP_IN_CATALOG:
            continue
        if cls.rank <= max_rank:
            entries.append((cls, affine_cartan(cls)))
    return tuple(entries)


def _node_invariants(a: GeneralizedCartanMatrix) -> list:
    inv = []
    for i in range(a.rank):
        pairs = sorted(
            (a.rows[i][j], a.rows[j][i]) for j in range(a.rank) if j != i and a.rows[i][j] != 0
        )
        inv.append(tuple(pairs))
    return inv


def isomorphism(a: GeneralizedCartanMatrix, b: GeneralizedCartanMatrix):
    """A permutation p with a[i][j] == b[p[i]][p[j]], or None."""
    if a.rank != b.rank:
        return None
    inv_a, inv_b = _node_invariants(a), _node_invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    n = a.rank
    perm: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in range(n):
            if used[cand] or inv_a[i] != inv_b[cand]:
                continue
            ok = all(
                a.rows[i][k] == b.rows[cand][perm[k]] and a.rows[k][i] == b.rows[perm[k]][cand]
                for k in range(i)
            )
            if not ok:
                continue
            used[cand] = True
            perm.append(cand)
            if extend(i + 1):
                return True
            used[cand] = False
            perm.pop()
        return False

    return tuple(perm) if extend(0) else None


def classify_with_map(a: GeneralizedCartanMatrix, max_rank: int = 12):
    """Recognize a diagram; returns (DiagramClass, perm) where perm sends
    catalog node positions to positions in `a` (None for Other)."""
    for cls, reference in catalog(max_rank):
        if reference.rank != a.rank:
            continue
        perm = isomorphism(reference, a)
        if perm is not None:
            return cls, perm
    return DiagramClass("other", rank=a.rank), None


def classify(a: GeneralizedCartanMatrix, max_rank: int = 12) -> DiagramClass:
    return classify_with_map(a, max_rank)[0]


# --------------------------------------------------------------------------
# Table-1 name conversions


def name_conversions(cls: DiagramClass) -> tuple[str, str, str]:
    """(our name, Moody-Pianzola name, Kac name) for an affine label."""
    if not cls.is_affine:
        raise ValueError("name conversions are defined for affine labels only")
    fam, n, sup = cls.family, cls.n, cls.superscript
    if sup is None:
        mp = kac = f"{fam}_{n}^(1)"
    elif sup == "even":
        if fam == "B":
            mp, kac = f"B_{n}^(2)", f"D_{n + 1}^(2)"
        elif fam == "C":
            mp, kac = f"C_{n}^(2)", f"A_{2 * n - 1}^(2)"
        else:
            mp, kac = "F_4^(2)", "E_6^(2)"
    elif sup == "odd":
        mp, kac = f"BC_{n}^(2)", f"A_{2 * n}^(2)"
    else:
        mp, kac = "G_2^(3)", "D_4^(3)"
    return cls.label(), mp, kac


# --------------------------------------------------------------------------
# finite presentability hypotheses


@dataclass(frozen=True)
class RingProfile:
    """Caller-asserted ring facts (the toolkit does not decide these)."""

    finitely_generated_ring: bool = False
    module_finite_over_unit_subring: bool = False
    units_finitely_generated: bool = False


@dataclass(frozen=True)
class PresentabilityVerdict:
    verdict: str  # "FinitelyPresentedCase_i" | "FinitelyPresentedCase_ii" | "HypothesesNotMet"
    used_special_covering: bool


def spherical_covering_holds(a: GeneralizedCartanMatrix) -> bool:
    """True iff every unordered node pair lies in an irreducible finite-type
    full subdiagram on at least 3 nodes."""
    cls = classify(a)
    if not cls.is_affine:
        raise ValueError("covering predicate is defined for affine diagrams")
    n = a.rank
    good_subsets: list[frozenset[int]] = []
    for mask in range(1, 1 << n):
        nodes = [i for i in range(n) if mask >> i & 1]
        if len(nodes) < 3:
            continue
        sub = a.submatrix(nodes)
        if len(sub.components()) != 1:
            continue
        if classify(sub).kind == "finite":
            good_subsets.append(frozenset(nodes))
    for i in range(n):
        for j in range(i + 1, n):
            if not any(i in s and j in s for s in good_subsets):
                return False
    return True


def finite_presentability_hypotheses(
    a: GeneralizedCartanMatrix, profile: RingProfile
) -> PresentabilityVerdict:
    cls = classify(a)
    if not cls.is_affine:
        raise ValueError("hypotheses apply to affine diagrams")
    if cls.rank < 3:
        raise ValueError("theorem hypotheses exclude rank 2")
    used_special = cls.rank > 3 and not spherical_covering_holds(a)
    if cls.rank > 3 and profile.finitely_generated_ring:
        verdict = "FinitelyPresentedCase_i"
    elif cls.rank == 3 and profile.module_finite_over_unit_subring:
        verdict = "FinitelyPresentedCase_ii"
    else:
        verdict = "HypothesesNotMet"
    return PresentabilityVerdict(verdict, used_special)


# --------------------------------------------------------------------------
# text input


def parse_matrix_text(text: str) -> GeneralizedCartanMatrix:
    """Parse the exchange format: line `rank n`, then n rows of n integers.
    `#` starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].lower().startswith("rank"):
        raise ValueError("diagram file must start with a `rank n` line")
    n = int(lines[0].split()[1])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = [[int(x) for x in line.split()] for line in lines[1:]]
    return gcm(rows)


def parse_diagram(text: str) -> GeneralizedCartanMatrix:
    """Accept either a family label (`A~2`, `BC~3^odd`, `B3`) or matrix text."""
    stripped = text.strip()
    if _LABEL_RE.match(stripped):
        cls = parse_label(stripped)
        if cls.is_affine:
            return affine_cartan(cls)
        return finite_cartan(cls.family, cls.n)
    return parse_matrix_text(text)
