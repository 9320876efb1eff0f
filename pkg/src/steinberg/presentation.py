"""Generators S_i, X_i(t), the relation families, derived torus/Weyl words,
the rank-at-most-two amalgam, and deterministic file emission.

Relations are kept as (left, right) word pairs rather than single relators,
which preserves the displayed shapes for diffing.  Concrete presentations
(finite rings) enumerate every instance; symbolic presentations carry one
schema per family, with formal parameter names in place of ring elements.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from . import diagrams, rings
from .diagrams import GeneralizedCartanMatrix


class Generator(NamedTuple):
    kind: str  # "S" | "X"
    node: int
    param: object = None  # RingElement, or a formal expression string

    def render(self) -> str:
        if self.kind == "S":
            return f"S{self.node}"
        if isinstance(self.param, rings.RingElement):
            text = rings.render_element(self.param).replace(" ", "")
        else:
            text = str(self.param)
        return f"X{self.node}({text})"


Word = tuple  # of (Generator, +-1)


def S(i: int) -> Generator:
    return Generator("S", i)


def X(i: int, param) -> Generator:
    return Generator("X", i, param)


def word(*letters) -> Word:
    return tuple(
        (item, 1) if isinstance(item, Generator) else item for item in letters
    )


def winv(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def conj(outer: Word, inner: Word) -> Word:
    return outer + inner + winv(outer)


def commutator_word(a: Word, b: Word) -> Word:
    return a + b + winv(a) + winv(b)


def render_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(g.render() + ("^-1" if e < 0 else "") for g, e in w)


def _inverse_param(u):
    if isinstance(u, rings.RingElement):
        try:
            return rings.inverse(u)
        except ValueError:
            raise ValueError("stilde is undefined for a non-unit parameter") from None
    return "-1" if u == "-1" else f"{u}^-1"


def _minus_one_like(u):
    if isinstance(u, rings.RingElement):
        return rings.from_int(u.desc, -1)
    return "-1"


def stilde(i: int, u) -> Word:
    """X_i(u) S_i X_i(1/u) S_i^-1 X_i(u); defined for units only."""
    return word(X(i, u), S(i), X(i, _inverse_param(u)), (S(i), -1), X(i, u))


def htilde(i: int, u) -> Word:
    return stilde(i, u) + stilde(i, _minus_one_like(u))


@dataclass(frozen=True)
class Relator:
    family: str
    nodes: tuple
    params: tuple  # ((name, value), ...)
    left: Word
    right: Word

    def render_params(self) -> list[str]:
        out = []
        for name, value in self.params:
            if isinstance(value, rings.RingElement):
                out.append(f"{name}={rings.render_element(value).replace(' ', '')}")
            else:
                out.append(f"{name}={value}")
        return out


@dataclass(frozen=True)
class PresentationOptions:
    include_torus_action: bool | None = None  # None: omit iff 2-spherical, no A_1
    include_kacmoody_torus: bool = False


@dataclass(frozen=True)
class Presentation:
    gcm: GeneralizedCartanMatrix
    ring: rings.RingDescriptor
    symbolic: bool
    generators: tuple
    relators: tuple
    options: PresentationOptions = field(default_factory=PresentationOptions)


FAMILY_ORDER = [
    "additivity", "s-defining", "s2-on-s", "s2-on-x",
    "artin-2", "interaction-2", "chevalley-2",
    "artin-3", "interaction-3", "chevalley-3-close", "chevalley-3-distant",
    "artin-4", "interaction-4", "chevalley-4-close",
    "chevalley-4-orthogonal-long", "chevalley-4-orthogonal-short",
    "chevalley-4-distant",
    "artin-6", "interaction-6", "chevalley-6-close-long",
    "chevalley-6-adjacent", "chevalley-6-orthogonal",
    "chevalley-6-distant-long", "chevalley-6-close-short",
    "chevalley-6-distant-short", "chevalley-6-distant",
    "torus-action-1", "torus-action-2", "torus",
]

TORUS_ACTION_FAMILIES = {"torus-action-1", "torus-action-2"}

_FAMILY_INDEX = {name: k for k, name in enumerate(FAMILY_ORDER)}


# ---------------------------------------------------------------------------
# parameter algebra shared by the concrete and symbolic modes


class _ConcreteOps:
    def __init__(self, ring):
        self.ring = ring
        self.t_name, self.u_name, self.r_name = "t", "u", "r"

    def add(self, a, b):
        return a + b

    def mono(self, k: int, *factors):
        out = rings.from_int(self.ring, k)
        for f in factors:
            out = out * f
        return out

    def rpow(self, r, e: int, t):
        return rings.power(r, e) * t


class _FormalOps:
    def add(self, a, b):
        return f"{a}+{b}"

    def mono(self, k: int, *factors):
        counts = Counter(factors)
        seen = []
        for f in factors:
            if f not in seen:
                seen.append(f)
        body = "*".join(f if counts[f] == 1 else f"{f}^{counts[f]}" for f in seen)
        if k == 1:
            return body if body else "1"
        if k == -1:
            return f"-{body}" if body else "-1"
        return f"{k}*{body}" if body else str(k)

    def rpow(self, r, e: int, t):
        if e == 0:
            return t
        return f"{r}^{e}*{t}"


# ---------------------------------------------------------------------------
# the relation families


def _short_long(a: GeneralizedCartanMatrix, i: int, j: int) -> tuple[int, int]:
    """(short node, long node) on an m = 4 or 6 edge: the symmetrized form
    gives the shorter root the pairing entry of larger magnitude."""
    if abs(a.rows[i][j]) > abs(a.rows[j][i]):
        return i, j
    return j, i


def _family_instances(a, ring, symbolic, nodes, include_torus, include_km_torus):
    ops = _FormalOps() if symbolic else _ConcreteOps(ring)
    if symbolic:
        t_values = ["t"]
        tu_values = [("t", "u")]
        r_values = ["r"]
        unit_pairs = [("u", "v")]
    else:
        elems = list(rings.elements(ring))
        units_list = rings.units(ring)
        t_values = elems
        tu_values = [(t, u) for t in elems for u in elems]
        r_values = units_list
        unit_pairs = [(u, v) for u in units_list for v in units_list]

    for i in nodes:
        for t, u in tu_values:
            yield Relator(
                "additivity", (i,), (("t", t), ("u", u)),
                word(X(i, t), X(i, u)),
                word(X(i, ops.add(t, u))),
            )
        one = ops.mono(1) if symbolic else rings.one(ring)
        yield Relator(
            "s-defining", (i,), (),
            word(S(i)),
            word(X(i, one), S(i), X(i, one), (S(i), -1), X(i, one)),
        )

    for i in nodes:
        for j in nodes:
            sign = 1 if a.rows[i][j] % 2 == 0 else -1
            yield Relator(
                "s2-on-s", (i, j), (),
                word(S(i), S(i), S(j), (S(i), -1), (S(i), -1)),
                word((S(j), sign)),
            )
            for t in t_values:
                yield Relator(
                    "s2-on-x", (i, j), (("t", t),),
                    word(S(i), S(i), X(j, t), (S(i), -1), (S(i), -1)),
                    word(X(j, ops.mono(sign, t))),
                )

    for i in nodes:
        for j in nodes:
            if i >= j:
                continue
            m = diagrams.coxeter_order(a, i, j)
            if m is diagrams.INFINITE:
                if not symbolic:
                    raise ValueError("no relation family exists for an m = infinity edge")
                continue
            yield from _edge_families(a, ops, symbolic, i, j, m, t_values, tu_values)

    if include_torus:
        for i in nodes:
            for j in nodes:
                aij = a.rows[i][j]
                for r in r_values:
                    h = htilde(i, r)
                    for t in t_values:
                        yield Relator(
                            "torus-action-1", (i, j), (("r", r), ("t", t)),
                            conj(h, word(X(j, t))),
                            word(X(j, ops.rpow(r, aij, t))),
                        )
                        yield Relator(
                            "torus-action-2", (i, j), (("r", r), ("t", t)),
                            conj(h, conj(word(S(j)), word(X(j, t)))),
                            conj(word(S(j)), word(X(j, ops.rpow(r, -aij, t)))),
                        )

    if include_km_torus:
        for i in nodes:
            for u, v in unit_pairs:
                yield Relator(
                    "torus", (i,), (("u", u), ("v", v)),
                    htilde(i, u) + htilde(i, v),
                    htilde(i, ops.mono(1, u, v)),
                )


def _edge_families(a, ops, symbolic, i, j, m, t_values, tu_values):
    if m == 2:
        yield Relator("artin-2", (i, j), (), word(S(i), S(j)), word(S(j), S(i)))
        for x, y in ((i, j), (j, i)):
            for t in t_values:
                yield Relator(
                    "interaction-2", (x, y), (("t", t),),
                    word(S(x), X(y, t)), word(X(y, t), S(x)),
                )
        for t, u in tu_values:
            yield Relator(
                "chevalley-2", (i, j), (("t", t), ("u", u)),
                word(X(i, t), X(j, u)), word(X(j, u), X(i, t)),
            )
        return

    if m == 3:
        yield Relator(
            "artin-3", (i, j), (),
            word(S(i), S(j), S(i)), word(S(j), S(i), S(j)),
        )
        for x, y in ((i, j), (j, i)):
            for t in t_values:
                yield Relator(
                    "interaction-3", (x, y), (("t", t),),
                    word(S(y), S(x), X(y, t)),
                    word(X(x, t), S(y), S(x)),
                )
            for t, u in tu_values:
                close = conj(word(S(x)), word(X(y, u)))
                yield Relator(
                    "chevalley-3-close", (x, y), (("t", t), ("u", u)),
                    word(X(x, t)) + close, close + word(X(x, t)),
                )
                yield Relator(
                    "chevalley-3-distant", (x, y), (("t", t), ("u", u)),
                    commutator_word(word(X(x, t)), word(X(y, u))),
                    conj(word(S(x)), word(X(y, ops.mono(1, t, u)))),
                )
        return

    s, l = _short_long(a, i, j)
    ws, wl = word(S(s)), word(S(l))
    wsl, wls = word(S(s), S(l)), word(S(l), S(s))

    if m == 4:
        yield Relator(
            "artin-4", (i, j), (),
            word(S(i), S(j), S(i), S(j)), word(S(j), S(i), S(j), S(i)),
        )
        for x, y in ((i, j), (j, i)):
            braid = word(S(x), S(y), S(x))
            for t in t_values:
                yield Relator(
                    "interaction-4", (x, y), (("t", t),),
                    braid + word(X(y, t)), word(X(y, t)) + braid,
                )
        for t, u in tu_values:
            lhs, rhs = conj(ws, word(X(l, t))), conj(wl, word(X(s, u)))
            yield Relator(
                "chevalley-4-close", (s, l), (("t", t), ("u", u)),
                lhs + rhs, rhs + lhs,
            )
            lhs, rhs = word(X(l, t)), conj(ws, word(X(l, u)))
            yield Relator(
                "chevalley-4-orthogonal-long", (s, l), (("t", t), ("u", u)),
                lhs + rhs, rhs + lhs,
            )
            yield Relator(
                "chevalley-4-orthogonal-short", (s, l), (("t", t), ("u", u)),
                commutator_word(word(X(s, t)), conj(wl, word(X(s, u)))),
                conj(ws, word(X(l, ops.mono(-2, t, u)))),
            )
            yield Relator(
                "chevalley-4-distant", (s, l), (("t", t), ("u", u)),
                commutator_word(word(X(s, t)), word(X(l, u))),
                conj(wl, word(X(s, ops.mono(-1, t, u))))
                + conj(ws, word(X(l, ops.mono(1, t, t, u)))),
            )
        return

    # m == 6
    yield Relator(
        "artin-6", (i, j), (),
        word(S(i), S(j), S(i), S(j), S(i), S(j)),
        word(S(j), S(i), S(j), S(i), S(j), S(i)),
    )
    for x, y in ((i, j), (j, i)):
        braid = word(S(x), S(y), S(x), S(y), S(x))
        for t in t_values:
            yield Relator(
                "interaction-6", (x, y), (("t", t),),
                braid + word(X(y, t)), word(X(y, t)) + braid,
            )
    for t, u in tu_values:
        lhs, rhs = word(X(l, t)), conj(wls, word(X(l, u)))
        yield Relator(
            "chevalley-6-close-long", (s, l), (("t", t), ("u", u)),
            lhs + rhs, rhs + lhs,
        )
        lhs, rhs = conj(wsl, word(X(s, t))), conj(wls, word(X(l, u)))
        yield Relator(
            "chevalley-6-adjacent", (s, l), (("t", t), ("u", u)),
            lhs + rhs, rhs + lhs,
        )
        lhs, rhs = conj(ws, word(X(l, t))), conj(wl, word(X(s, u)))
        yield Relator(
            "chevalley-6-orthogonal", (s, l), (("t", t), ("u", u)),
            lhs + rhs, rhs + lhs,
        )
        yield Relator(
            "chevalley-6-distant-long", (s, l), (("t", t), ("u", u)),
            commutator_word(word(X(l, t)), conj(ws, word(X(l, u)))),
            conj(wls, word(X(l, ops.mono(1, t, u)))),
        )
        yield Relator(
            "chevalley-6-close-short", (s, l), (("t", t), ("u", u)),
            commutator_word(word(X(s, t)), conj(wsl, word(X(s, u)))),
            conj(ws, word(X(l, ops.mono(3, t, u)))),
        )
        yield Relator(
            "chevalley-6-distant-short", (s, l), (("t", t), ("u", u)),
            commutator_word(word(X(s, t)), conj(wl, word(X(s, u)))),
            conj(wsl, word(X(s, ops.mono(-2, t, u))))
            + conj(ws, word(X(l, ops.mono(-3, t, t, u))))
            + conj(wls, word(X(l, ops.mono(-3, t, u, u)))),
        )
        yield Relator(
            "chevalley-6-distant", (s, l), (("t", t), ("u", u)),
            commutator_word(word(X(s, t)), word(X(l, u))),
            conj(wsl, word(X(s, ops.mono(1, t, t, u))))
            + conj(wl, word(X(s, ops.mono(-1, t, u))))
            + conj(ws, word(X(l, ops.mono(1, t, t, t, u))))
            + conj(wls, word(X(l, ops.mono(-1, t, t, t, u, u)))),
        )


# ---------------------------------------------------------------------------
# presentations


def _is_finite_ring(ring: rings.RingDescriptor) -> bool:
    return ring.kind in ("Zmod", "GF")


def _relator_sort_key(rel: Relator):
    return (
        _FAMILY_INDEX[rel.family],
        rel.nodes,
        tuple(rel.render_params()),
        render_word(rel.left),
        render_word(rel.right),
    )


def _generators(ring, symbolic, nodes):
    gens = [S(i) for i in nodes]
    if symbolic:
        gens += [X(i, "t") for i in nodes]
    else:
        for i in nodes:
            gens += [X(i, t) for t in rings.elements(ring)]
    return tuple(gens)


def _resolve_torus_flag(a, options: PresentationOptions) -> bool:
    if options.include_torus_action is not None:
        return options.include_torus_action
    return not diagrams.two_spherical_no_a1(a)


def relators_for(
    a: GeneralizedCartanMatrix,
    ring: rings.RingDescriptor,
    options: PresentationOptions = PresentationOptions(),
) -> Presentation:
    """Every relation-family instance of the presentation on the diagram.

    Concrete mode (finite rings) enumerates all parameters; other rings give
    the symbolic schema form.
    """
    symbolic = not _is_finite_ring(ring)
    include_torus = _resolve_torus_flag(a, options)
    nodes = range(a.rank)
    rels = sorted(
        _family_instances(
            a, ring, symbolic, nodes, include_torus, options.include_kacmoody_torus
        ),
        key=_relator_sort_key,
    )
    return Presentation(a, ring, symbolic, _generators(ring, symbolic, nodes), tuple(rels), options)


def amalgam(
    a: GeneralizedCartanMatrix,
    ring: rings.RingDescriptor,
    options: PresentationOptions = PresentationOptions(),
) -> Presentation:
    """Union of the presentations of all rank-1 and rank-2 subdiagrams, with
    generators identified across subdiagrams by node label.  The torus-action
    families never appear here: the amalgamated presentation is the direct
    limit one, in which they are consequences."""
    symbolic = not _is_finite_ring(ring)
    seen = set()
    rels = []
    pieces = [(i,) for i in range(a.rank)]
    pieces += [(i, j) for i in range(a.rank) for j in range(i + 1, a.rank)]
    for nodes in pieces:
        for rel in _family_instances(
            a, ring, symbolic, nodes, False, options.include_kacmoody_torus
        ):
            if rel not in seen:
                seen.add(rel)
                rels.append(rel)
    rels.sort(key=_relator_sort_key)
    return Presentation(
        a, ring, symbolic, _generators(ring, symbolic, range(a.rank)), tuple(rels), options
    )


# ---------------------------------------------------------------------------
# emission and parsing


def emit(p: Presentation, fmt: str = "native") -> str:
    if fmt == "native":
        return _emit_native(p)
    if fmt == "gap":
        return _emit_gap(p)
    if fmt == "json":
        return _emit_json(p)
    raise ValueError(f"unknown format {fmt!r}")


def _emit_json(p: Presentation) -> str:
    import json

    payload = {
        "ring": str(p.ring),
        "symbolic": p.symbolic,
        "cartan": [list(row) for row in p.gcm.rows],
        "generators": [g.render() for g in p.generators],
        "relators": [
            {
                "family": rel.family,
                "nodes": list(rel.nodes),
                "params": rel.render_params(),
                "left": render_word(rel.left),
                "right": render_word(rel.right),
            }
            for rel in p.relators
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit_native(p: Presentation) -> str:
    lines = [f"ring {p.ring}"]
    if p.symbolic:
        lines.append("symbolic")
    for i in range(p.gcm.rank):
        row = " ".join(str(x) for x in p.gcm.rows[i])
        lines.append(f"node {i} {row}")
    for g in p.generators:
        if g.kind == "S":
            lines.append(f"gen S {g.node}")
        else:
            param = "t" if p.symbolic else rings.render_element(g.param).replace(" ", "")
            lines.append(f"gen X {g.node} {param}")
    for rel in p.relators:
        nodes = " ".join(str(n) for n in rel.nodes)
        params = " ".join(rel.render_params())
        head = " ".join(x for x in (rel.family, nodes, params) if x)
        lines.append(f"rel {head} : {render_word(rel.left)} = {render_word(rel.right)}")
    return "\n".join(lines) + "\n"


def _gap_name(g: Generator) -> str:
    if g.kind == "S":
        return f"S{g.node}"
    return f"X{g.node}_{g.param.data}"


def _emit_gap(p: Presentation) -> str:
    if p.symbolic:
        raise ValueError("the gap-flavored format requires a concrete presentation")
    names = [_gap_name(g) for g in p.generators]
    lines = [
        "# free-group presentation, GAP-flavored",
        "F := FreeGroup(" + ", ".join(f'"{n}"' for n in names) + ");",
        "AssignGeneratorVariables(F);",
        "rels := [",
    ]
    for rel in p.relators:
        left = "*".join(
            _gap_name(g) + ("^-1" if e < 0 else "") for g, e in rel.left
        ) or "One(F)"
        right_inv = "*".join(
            _gap_name(g) + ("^-1" if e > 0 else "") for g, e in reversed(rel.right)
        ) or "One(F)"
        lines.append(f"  {left}*{right_inv},")
    lines.append("];")
    lines.append("G := F / rels;")
    return "\n".join(lines) + "\n"


_LETTER_ERR = "cannot parse word letter {!r}"


def _parse_letter(token: str, ring, symbolic):
    exp = 1
    if token.endswith("^-1"):
        exp = -1
        token = token[:-3]
    if token.startswith("S"):
        return (S(int(token[1:])), exp)
    if token.startswith("X"):
        node_text, _, rest = token.partition("(")
        if not rest.endswith(")"):
            raise ValueError(_LETTER_ERR.format(token))
        param_text = rest[:-1]
        param = param_text if symbolic else rings.parse_element(ring, param_text)
        return (X(int(node_text[1:]), param), exp)
    raise ValueError(_LETTER_ERR.format(token))


def parse_native(text: str) -> Presentation:
    ring = None
    symbolic = False
    rows = {}
    gens = []
    rels = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "ring":
            ring = rings.parse_descriptor(rest.strip())
        elif head == "symbolic":
            symbolic = True
        elif head == "node":
            parts = rest.split()
            rows[int(parts[0])] = [int(x) for x in parts[1:]]
        elif head == "gen":
            parts = rest.split()
            if parts[0] == "S":
                gens.append(S(int(parts[1])))
            else:
                param = parts[2] if symbolic else rings.parse_element(ring, parts[2])
                gens.append(X(int(parts[1]), param))
        elif head == "rel":
            header, _, body = rest.partition(":")
            tokens = header.split()
            family = tokens[0]
            nodes = tuple(int(x) for x in tokens[1:] if "=" not in x)
            params = []
            for tok in tokens[1:]:
                if "=" in tok:
                    name, _, value = tok.partition("=")
                    params.append(
                        (name, value if symbolic else rings.parse_element(ring, value))
                    )
            left_text, _, right_text = body.partition("=")
            left = tuple(
                _parse_letter(tok, ring, symbolic) for tok in left_text.split()
            )
            right = tuple(
                _parse_letter(tok, ring, symbolic) for tok in right_text.split()
            )
            rels.append(Relator(family, nodes, tuple(params), left, right))
        else:
            raise ValueError(f"unknown line {line!r}")
    matrix = diagrams.gcm([rows[i] for i in sorted(rows)])
    return Presentation(matrix, ring, symbolic, tuple(gens), tuple(rels))
