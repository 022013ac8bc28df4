"""Brute-force certification over tiny finite rings: exhaustive BFS orbits
of the right generator action on rows and frames, with predecessor links so
any claimed equivalence can be re-derived as an explicit path word.

Determinism: objects are enumerated in lexicographic payload order,
generators are ordered by (i, j, parameter key), and when several frontier
edges reach the same new object the lowest-ordered (parent, generator) pair
wins, independently of how the frontier was chunked across workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (ObjectOutOfDomain, SearchBudgetExceeded, UnsupportedRing)
from .matrices import Mat
from .rings import ModularRing, QuotientRing, Ring, RingValue, ring_from_json
from .words import FAMILY_ORTH, Generator, GenWord, paired_index

FORMAT_VERSION = 1
DEFAULT_BUDGET = 10 ** 7


def _is_unimodular_row(ring: Ring, values) -> bool:
    if ring.is_zero_ring:
        return True
    if ring.is_local:
        return any(v.is_unit() for v in values)
    if isinstance(ring, ModularRing):
        from math import gcd
        g = ring.n
        for v in values:
            g = gcd(g, v.payload)
        return g == 1
    if isinstance(ring, QuotientRing) and ring.style == "integer":
        from math import gcd
        g = ring.modulus
        for v in values:
            g = gcd(g, v.payload)
        return g == 1
    from .rings import unit_ideal_witness
    return unit_ideal_witness(ring, list(values)) is not None


def generator_catalog(ring: Ring, family: str, size: int):
    """All generators with nonzero parameters, in canonical order."""
    nonzero = [v for v in ring.elements() if not v.is_zero()]
    nonzero.sort(key=lambda v: ring.sort_key(v.payload))
    gens = []
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if i == j:
                continue
            if family == FAMILY_ORTH and i == paired_index(j):
                continue
            for z in nonzero:
                gens.append(Generator(family, i, j, z, size))
    return gens


def _row_key(values):
    return tuple(v.payload for v in values)


def _frame_key(rows):
    return tuple(tuple(v.payload for v in row) for row in rows)


def _act_row(ring: Ring, key, g: Generator):
    row = [RingValue(ring, p) for p in key]
    for target, source, coeff in g.updates():
        t, s = target - 1, source - 1
        if not row[s].is_zero():
            row[t] = row[t] + coeff * row[s]
    return _row_key(row)


def _act_frame(ring: Ring, key, g: Generator):
    rows = [[RingValue(ring, p) for p in r] for r in key]
    for target, source, coeff in g.updates():
        t, s = target - 1, source - 1
        for row in rows:
            if not row[s].is_zero():
                row[t] = row[t] + coeff * row[s]
    return _frame_key(rows)


@dataclass
class OrbitTable:
    """Reachability data for one generator action over a finite ring."""

    ring: Ring
    kind: str  # "row" | "frame"
    family: str
    size: int  # row length, or the frame's column count
    frame_rows: int = 0
    orbit_of: dict = field(default_factory=dict)
    reps: list = field(default_factory=list)
    pred: dict = field(default_factory=dict)  # key -> (parent_key, Generator)

    def orbit_count(self) -> int:
        return len(self.reps)

    def orbit_sizes(self) -> list:
        sizes = [0] * len(self.reps)
        for _, oid in self.orbit_of.items():
            sizes[oid] += 1
        return sizes

    def contains(self, key) -> bool:
        return key in self.orbit_of

    def path_word(self, key) -> GenWord:
        """The word carrying this orbit's representative to ``key``."""
        if key not in self.orbit_of:
            raise ObjectOutOfDomain(f"{key} is not in the table")
        gens = []
        cur = key
        while True:
            link = self.pred.get(cur)
            if link is None:
                break
            parent, g = link
            gens.append(g)
            cur = parent
        gens.reverse()
        return GenWord(self.ring, self.size, self.family, tuple(gens))

    def to_json(self) -> dict:
        def enc_key(k):
            if self.kind == "row":
                return [self.ring.value_to_json(p) for p in k]
            return [[self.ring.value_to_json(p) for p in row] for row in k]

        objects = []
        for key in sorted(self.orbit_of, key=self._key_order):
            link = self.pred.get(key)
            objects.append({
                "v": enc_key(key),
                "orbit": self.orbit_of[key],
                "pred": None if link is None else
                        [enc_key(link[0]), link[1].to_json()],
            })
        return {"version": FORMAT_VERSION, "ring": self.ring.to_json(),
                "kind": self.kind, "family": self.family, "size": self.size,
                "frame_rows": self.frame_rows, "objects": objects}

    @staticmethod
    def from_json(obj: dict) -> "OrbitTable":
        if obj.get("version") != FORMAT_VERSION:
            raise UnsupportedRing(f"unknown table version {obj.get('version')}")
        ring = ring_from_json(obj["ring"])
        kind = obj["kind"]

        def dec_key(v):
            if kind == "row":
                return tuple(ring.value_from_json(p).payload for p in v)
            return tuple(tuple(ring.value_from_json(p).payload for p in row)
                         for row in v)

        table = OrbitTable(ring, kind, obj["family"], int(obj["size"]),
                           int(obj.get("frame_rows", 0)))
        reps_seen = {}
        for entry in obj["objects"]:
            key = dec_key(entry["v"])
            oid = int(entry["orbit"])
            table.orbit_of[key] = oid
            reps_seen.setdefault(oid, key)
            if entry["pred"] is not None:
                pk = dec_key(entry["pred"][0])
                gj = entry["pred"][1]
                g = Generator(obj["family"], int(gj["i"]), int(gj["j"]),
                              ring.value_from_json(gj["param"]), int(obj["size"]))
                table.pred[key] = (pk, g)
            else:
                table.pred[key] = None
        table.reps = [reps_seen[i] for i in range(len(reps_seen))]
        return table

    def _key_order(self, key):
        if self.kind == "row":
            return tuple(self.ring.sort_key(p) for p in key)
        return tuple(tuple(self.ring.sort_key(p) for p in row) for row in key)


def _bfs_closure(table: OrbitTable, start_keys, act, gens, budget: int,
                 workers: int):
    """Deterministic multi-source BFS; frontier chunking cannot change the
    predecessor assignment because ties pick the least (parent, generator)."""
    order = {id(g): idx for idx, g in enumerate(gens)}
    for oid, root in enumerate(start_keys):
        if root in table.orbit_of:
            continue
        oid = len(table.reps)
        table.reps.append(root)
        table.orbit_of[root] = oid
        table.pred[root] = None
        frontier = [root]
        while frontier:
            # split the frontier the way a worker pool would, then merge
            chunks = [frontier[w::workers] for w in range(max(1, workers))]
            proposals: dict = {}
            for chunk in chunks:
                for node in chunk:
                    for gi, g in enumerate(gens):
                        new = act(table.ring, node, g)
                        if new in table.orbit_of:
                            continue
                        cand = (table._key_order(node), gi, node, g)
                        best = proposals.get(new)
                        if best is None or cand[:2] < best[:2]:
                            proposals[new] = cand
            next_frontier = []
            for new, (_, _, parent, g) in sorted(
                    proposals.items(), key=lambda kv: table._key_order(kv[0])):
                table.orbit_of[new] = oid
                table.pred[new] = (parent, g)
                next_frontier.append(new)
                if len(table.orbit_of) > budget:
                    raise SearchBudgetExceeded(
                        f"orbit table exceeded budget {budget}")
            frontier = next_frontier


def enumerate_orbits(ring: Ring, kind: str, family: str, size: int,
                     frame_rows: int = 0, budget: int = DEFAULT_BUDGET,
                     workers: int = 1, seeds=()) -> OrbitTable:
    """Exhaustive orbits of the right generator action.

    kind "row": partitions all unimodular rows of the given length.
    kind "frame": the closure of the standard frame [I | 0] (plus any
    extra seed frames), pruned to form-compatible objects by construction.
    """
    if not ring.is_finite:
        raise UnsupportedRing("orbit enumeration needs a finite ring")
    if kind == "row":
        if ring.cardinality() ** size > budget:
            raise SearchBudgetExceeded(
                f"{ring.cardinality()}^{size} objects exceed budget {budget}")
        table = OrbitTable(ring, "row", family, size)
        gens = generator_catalog(ring, family, size) if size >= 2 else []
        pool = list(ring.elements())
        domain = []
        for combo in itertools.product(pool, repeat=size):
            if _is_unimodular_row(ring, combo):
                domain.append(_row_key(combo))
        domain.sort(key=table._key_order)
        if not gens:
            for key in domain:
                table.orbit_of[key] = len(table.reps)
                table.pred[key] = None
                table.reps.append(key)
            return table
        _bfs_closure(table, domain, _act_row, gens, budget, workers)
        return table
    if kind == "frame":
        if frame_rows <= 0 or frame_rows > size:
            raise ObjectOutOfDomain("frame kind needs frame_rows in 1..size")
        table = OrbitTable(ring, "frame", family, size, frame_rows)
        gens = generator_catalog(ring, family, size)
        ident = Mat.identity(ring, size)
        standard = _frame_key([list(ident.entries[i]) for i in range(frame_rows)])
        starts = [standard] + [
            _frame_key(s.entries if isinstance(s, Mat) else s) for s in seeds]
        _bfs_closure(table, starts, _act_frame, gens, budget, workers)
        return table
    raise ObjectOutOfDomain(f"unknown object kind {kind!r}")


def certify_equivalence(v1, v2, table: OrbitTable):
    """An explicit word with v1 . eval(word) = v2, or None when the
    exhaustive table proves there is none."""
    k1 = _row_key(v1.entries[0]) if isinstance(v1, Mat) else tuple(v1)
    k2 = _row_key(v2.entries[0]) if isinstance(v2, Mat) else tuple(v2)
    if table.kind == "frame":
        k1 = _frame_key(v1.entries) if isinstance(v1, Mat) else v1
        k2 = _frame_key(v2.entries) if isinstance(v2, Mat) else v2
    for k in (k1, k2):
        if k not in table.orbit_of:
            raise ObjectOutOfDomain(f"{k} is not in the table's domain")
    if table.orbit_of[k1] != table.orbit_of[k2]:
        return None
    word = table.path_word(k1).invert() + table.path_word(k2)
    # re-verify the path before returning it
    act = _act_row if table.kind == "row" else _act_frame
    cur = k1
    for g in word:
        cur = act(table.ring, cur, g)
    if cur != k2:
        raise ObjectOutOfDomain("internal: path verification failed")
    return word
