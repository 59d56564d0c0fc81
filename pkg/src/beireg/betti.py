"""Graded Betti numbers of squarefree monomial quotients and the regularity oracle.

Two independent routes give the multigraded Betti numbers of ``S/I``:

* ``hochster``: for each squarefree degree ``W`` in the lcm lattice,
  ``beta_{i+1,W}(S/I) = dim H~_{|W|-i-2}(Delta|_W)`` where ``Delta`` is the
  Stanley-Reisner complex of ``I``;
* ``lcm``: ``beta_{i,m}(S/I) = dim H~_{i-2}((0, m))`` for ``m`` in the lcm
  lattice; the open interval is replaced by its crosscut complex on the
  coatoms below ``m`` (sets of coatoms whose meet is not the bottom), which
  has the same homology and at most ``|supp(m)|`` vertices.

Homology is computed over GF(p).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .graph import Graph
from .groebner import DEFAULT_CHAR, MonomialIdeal, NonSquarefreeError, binomial_edge_initial_ideal, check_char


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    hochster_max_n: int = 10
    lcm_max_n: int = 12
    max_lattice: int = 400_000
    max_faces: int = 3_000_000
    max_ground: int = 24

    @classmethod
    def from_env(cls, env: str | None = None) -> Budget:
        """Defaults overridden by ``BEI_BUDGET="key=value,..."``."""
        spec = os.environ.get("BEI_BUDGET", "") if env is None else env
        budget = cls()
        names = {f.name for f in fields(cls)}
        for item in filter(None, (s.strip() for s in spec.split(","))):
            key, _, value = item.partition("=")
            if key not in names:
                raise ValueError(f"unknown budget key {key!r} in BEI_BUDGET")
            budget = replace(budget, **{key: int(value)})
        return budget


# -- linear algebra over GF(p) ---------------------------------------------------

def _reduce_gf2(faces: list[int], index: dict[int, int], cleared: set[int]) -> tuple[int, set[int]]:
    pivots: dict[int, int] = {}
    for f in faces:
        if f in cleared:
            continue
        col = 0
        rest = f
        while rest:
            low = rest & -rest
            col |= 1 << index[f ^ low]
            rest ^= low
        while col:
            top = col.bit_length() - 1
            other = pivots.get(top)
            if other is None:
                pivots[top] = col
                break
            col ^= other
    return len(pivots), set(pivots)


def _reduce_mod_p(faces: list[int], index: dict[int, int], cleared: set[int], p: int) -> tuple[int, set[int]]:
    pivots: dict[int, dict[int, int]] = {}
    for f in faces:
        if f in cleared:
            continue
        col: dict[int, int] = {}
        sign = 1
        rest = f
        while rest:
            low = rest & -rest
            col[index[f ^ low]] = sign % p
            sign = -sign
            rest ^= low
        while col:
            top = max(col)
            piv = pivots.get(top)
            if piv is None:
                inv = pow(col[top], -1, p)
                pivots[top] = {c: v * inv % p for c, v in col.items()}
                break
            factor = col[top]
            for c, v in piv.items():
                nv = (col.get(c, 0) - factor * v) % p
                if nv:
                    col[c] = nv
                else:
                    col.pop(c, None)
    return len(pivots), set(pivots)


def homology_from_faces(faces: list[int], p: int) -> list[int]:
    """Reduced homology ranks ``[H~_-1, H~_0, ...]`` of a complex given by all its faces as bitmasks.

    ``faces`` must be downward closed; an empty list is the void complex.
    Boundary matrices are reduced from the top dimension down in bitmask
    order (a filtration), so faces already paired one dimension up are
    skipped without reduction.
    """
    if not faces:
        return []
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    top = max(by_dim)
    for fs in by_dim.values():
        fs.sort()
    ranks = {top + 1: 0, -1: 0}
    cleared: set[int] = set()
    for d in range(top, -1, -1):
        lower = by_dim[d - 1]
        index = {f: i for i, f in enumerate(lower)}
        if p == 2:
            r, piv = _reduce_gf2(by_dim[d], index, cleared)
        else:
            r, piv = _reduce_mod_p(by_dim[d], index, cleared, p)
        ranks[d] = r
        cleared = {lower[i] for i in piv}
    return [len(by_dim[d]) - ranks[d] - ranks[d + 1] for d in range(-1, top + 1)]


def _stanley_reisner_faces(gens: list[int], ground: int, max_faces: int) -> list[int]:
    """Subsets of ``ground`` containing no generator support."""
    if any(g == 0 for g in gens):
        return []
    # a singleton generator is a non-vertex
    allowed0 = ground
    for g in gens:
        if g & (g - 1) == 0:
            allowed0 &= ~g
    by_vertex: dict[int, list[int]] = {}
    for g in gens:
        rest = g
        while rest:
            low = rest & -rest
            by_vertex.setdefault(low.bit_length() - 1, []).append(g)
            rest ^= low
    faces = [0]
    # (face, vertices that may still be added: above the last one and not completing a generator)
    stack = [(0, allowed0)]
    while stack:
        face, allowed = stack.pop()
        rest = allowed
        while rest:
            low = rest & -rest
            rest ^= low
            new = face | low
            faces.append(new)
            nxt = rest
            for g in by_vertex.get(low.bit_length() - 1, ()):
                missing = g & ~new
                if missing & (missing - 1) == 0:
                    nxt &= ~missing
            if nxt:
                stack.append((new, nxt))
        if len(faces) > max_faces:
            raise BudgetExceeded(f"complex on {bin(ground).count('1')} vertices exceeds {max_faces} faces")
    return faces


def reduced_homology_ranks(gens: list[int], ground: int, p: int = DEFAULT_CHAR,
                           budget: Budget | None = None) -> list[int]:
    """Reduced homology of the Stanley-Reisner complex of ``gens`` restricted to ``ground``.

    Index ``k`` of the result holds ``H~_{k-1}``.
    """
    budget = budget or Budget.from_env()
    size = bin(ground).count("1")
    if size > budget.max_ground:
        raise BudgetExceeded(f"ground set of {size} vertices exceeds {budget.max_ground}")
    inside = [g for g in gens if g & ground == g]
    return homology_from_faces(_stanley_reisner_faces(inside, ground, budget.max_faces), p)


# -- lcm lattice -----------------------------------------------------------------

def lcm_lattice(gens: list[int], max_size: int) -> list[int]:
    """All lcms (unions of supports) of nonempty generator subsets."""
    lattice = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                u = a | g
                if u not in lattice:
                    new.add(u)
        lattice |= new
        if len(lattice) > max_size:
            raise BudgetExceeded(f"lcm lattice has more than {max_size} elements")
        frontier = new
    return sorted(lattice)


def _coatoms(atoms: list[int], top: int) -> list[int]:
    """Coatoms of the lcm lattice below ``top``.

    Every proper union of atoms misses some variable ``x`` of ``top`` and so
    lies under the union of all atoms avoiding ``x``; the maximal such unions
    are the coatoms.
    """
    cands = set()
    rest = top
    while rest:
        low = rest & -rest
        rest ^= low
        u = 0
        for a in atoms:
            if not a & low:
                u |= a
        if u:
            cands.add(u)
    return sorted(c for c in cands if not any(c != d and c & d == c for d in cands))


def _crosscut_faces(atoms: list[int], coatoms: list[int], max_faces: int) -> list[int]:
    """Coatom crosscut complex: coatom sets whose meet is above the bottom, i.e. contains an atom."""
    faces = [0]
    stack = [(0, -1, 0)]
    while stack:
        face, meet, start = stack.pop()
        for idx in range(start, len(coatoms)):
            m = meet & coatoms[idx]
            if not any(a & m == a for a in atoms):
                continue
            new = face | (1 << idx)
            faces.append(new)
            if len(faces) > max_faces:
                raise BudgetExceeded(f"crosscut complex with {len(coatoms)} coatoms exceeds {max_faces} faces")
            stack.append((new, m, idx + 1))
    return faces


# -- Betti tables ----------------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers ``beta_{i,j}`` of ``S/I``."""

    entries: dict[tuple[int, int], int]

    @property
    def regularity(self) -> int:
        return max(j - i for (i, j) in self.entries)

    @property
    def projective_dimension(self) -> int:
        return max(i for (i, _) in self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def format(self) -> str:
        pd, reg = self.projective_dimension, self.regularity
        cols = list(range(pd + 1))
        totals = [sum(v for (i, _), v in self.entries.items() if i == c) for c in cols]
        cells = [[str(self.entries.get((c, c + r), ".")) if (c, c + r) in self.entries else "."
                  for c in cols] for r in range(reg + 1)]
        width = max(len(s) for s in [str(c) for c in cols] + [str(t) for t in totals]
                    + [x for row in cells for x in row])
        label = max(len("total:"), len(f"{reg}:"))
        lines = [" " * label + " " + " ".join(str(c).rjust(width) for c in cols),
                 "total:".rjust(label) + " " + " ".join(str(t).rjust(width) for t in totals)]
        for r, row in enumerate(cells):
            lines.append(f"{r}:".rjust(label) + " " + " ".join(x.rjust(width) for x in row))
        return "\n".join(lines)

    def to_list(self) -> list[dict[str, int]]:
        return [{"i": i, "j": j, "rank": v} for (i, j), v in sorted(self.entries.items())]


def betti_table(ideal: MonomialIdeal, p: int = DEFAULT_CHAR, method: str = "hochster",
                budget: Budget | None = None) -> BettiTable:
    check_char(p)
    budget = budget or Budget.from_env()
    if not ideal.squarefree:
        raise NonSquarefreeError("betti_table needs a squarefree monomial ideal")
    gens = ideal.masks()
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    if not gens:
        return BettiTable(entries)
    if any(g == 0 for g in gens):
        # unit ideal: S/I = 0
        return BettiTable({})
    lattice = lcm_lattice(gens, budget.max_lattice)

    def bump(i: int, j: int, r: int) -> None:
        if r:
            entries[(i, j)] = entries.get((i, j), 0) + r

    if method == "hochster":
        for w in lattice:
            size = bin(w).count("1")
            ranks = reduced_homology_ranks(gens, w, p, budget)
            for k, r in enumerate(ranks):
                # r = dim H~_{k-1}(Delta_W) = beta_{i,W}(I) with k-1 = |W|-i-2
                bump(size - k, size, r)
    elif method == "lcm":
        for m in lattice:
            atoms = [g for g in gens if g & m == g]
            faces = _crosscut_faces(atoms, _coatoms(atoms, m), budget.max_faces)
            ranks = homology_from_faces(faces, p)
            size = bin(m).count("1")
            for k, r in enumerate(ranks):
                # r = dim H~_{k-1} = beta_{k+1,m}(S/I)
                bump(k + 1, size, r)
    else:
        raise ValueError(f"unknown Betti method {method!r}")
    return BettiTable(dict(sorted(entries.items())))


@dataclass(frozen=True)
class OracleResult:
    ideal: MonomialIdeal
    table: BettiTable

    @property
    def reg(self) -> int:
        return self.table.regularity


def oracle(g: Graph, p: int = DEFAULT_CHAR, gb_route: str = "buchberger", method: str = "hochster",
           budget: Budget | None = None) -> OracleResult:
    """Betti table of ``S/in(J_G)`` under lex; its regularity equals ``reg(S/J_G)``."""
    budget = budget or Budget.from_env()
    limit = budget.hochster_max_n if method == "hochster" else budget.lcm_max_n
    if g.n > limit:
        raise BudgetExceeded(f"{method} oracle limited to n <= {limit}, got n = {g.n}")
    ideal = binomial_edge_initial_ideal(g, p, gb_route)
    if not ideal.squarefree:
        raise NonSquarefreeError("initial ideal is not squarefree")
    return OracleResult(ideal, betti_table(ideal, p, method, budget))


def regularity_oracle(g: Graph, p: int = DEFAULT_CHAR, gb_route: str = "buchberger",
                      method: str = "hochster", budget: Budget | None = None) -> int:
    return oracle(g, p, gb_route, method, budget).reg
