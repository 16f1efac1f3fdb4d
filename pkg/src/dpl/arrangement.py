"""Arrangements of double pseudolines encoded by their side cycles.

An arrangement on an index set ``I`` is stored as two families of circular
words over the signed co-indices: the disk-side cycles ``D_i`` and the
crosscap-side cycles ``M_i``.  Validation follows the side-cycle
characterization: every co-index occurs four times per cycle with cyclic
sign pattern a rotation of ``(-,-,+,+)``; the slotted cycles admit a
unique decomposition into prime factors that the crosscap cycle lists
blockwise reversed; and every prime factor transported by
:func:`dpl.words.roll` is a prime factor of the target cycle.

Slot anchoring: in ``D_i`` the four occurrences of ``j`` matching the
linear pattern ``(-j, -j, +j, +j)`` get slots 1..4; in ``M_i`` the anchor
pattern is ``(+j, +j, -j, -j)``.  Both anchors are calibrated on the
two-curve arrangement and on the published pair of arrangements sharing
their disk cycles (see README).
"""

import json
from collections import Counter

from . import words as W
from .errors import (
    BadSignPattern,
    FormatError,
    NoBlockDecomposition,
    NotSimple,
    RollMismatch,
    SubsetTooSmall,
    UnknownIndex,
    WrongMultiplicity,
)

_D_ANCHOR = (-1, -1, 1, 1)
_M_ANCHOR = (1, 1, -1, -1)


def _slot_positions(word, carrier, anchor):
    """Crossing pair at each position of a side cycle, or raise."""
    occ = {}
    for p, letter in enumerate(word):
        base = abs(letter)
        if base == carrier or base == 0:
            raise BadSignPattern(
                "cycle of %d contains illegal letter %d" % (carrier, letter),
                carrier=carrier,
            )
        occ.setdefault(base, []).append(p)
    pairs = [None] * len(word)
    for base, positions in occ.items():
        if len(positions) != 4:
            raise WrongMultiplicity(
                "index %d occurs %d times in cycle of %d"
                % (base, len(positions), carrier),
                carrier=carrier, co=base,
            )
        signs = [1 if word[p] > 0 else -1 for p in positions]
        start = None
        for r in range(4):
            if all(signs[(r + t) % 4] == anchor[t] for t in range(4)):
                start = r
                break
        if start is None:
            raise BadSignPattern(
                "signs of %d in cycle of %d are not a rotation of the "
                "elementary cycle" % (base, carrier),
                carrier=carrier, co=base,
            )
        for t in range(4):
            pairs[positions[(start + t) % 4]] = W.pair_of(carrier, base, t + 1)
    return tuple(pairs)


def _all_partitions(S, T, start, max_block, carrier):
    """All decompositions of the cyclic window starting at ``start``."""
    L = len(S)
    found = []
    stack = [(0, ())]
    while stack:
        pos, spans = stack.pop()
        if pos == L:
            found.append(spans)
            continue
        for length in range(1, max_block + 1):
            if pos + length > L:
                break
            sl = tuple((start + t) % L for t in range(pos, pos + length))
            block_S = [S[p] for p in sl]
            if [T[p] for p in sl] != block_S[::-1]:
                continue
            cobases = {abs(W.co_index(pr, carrier)) for pr in block_S}
            if len(cobases) != length:
                continue
            stack.append((pos + length, spans + (sl,)))
    return found


def _decompose(S, T_given, max_block, carrier):
    """Align the crosscap slots with the disk slots and find the factors.

    Returns ``(shift, spans)``: walk position ``p`` corresponds to position
    ``(p + shift) % L`` of the given crosscap cycle, and ``spans`` lists the
    prime-factor position tuples in walk order.
    """
    L = len(S)
    if sorted(S) != sorted(T_given):
        raise NoBlockDecomposition(
            "disk and crosscap slots of %d disagree" % carrier, carrier=carrier
        )
    solutions = {}
    for r in range(L):
        T = tuple(T_given[(p + r) % L] for p in range(L))
        for back in range(max_block):
            s = (-back) % L
            for spans in _all_partitions(S, T, s, max_block, carrier):
                solutions.setdefault(frozenset(spans), r)
    if not solutions:
        raise NoBlockDecomposition(
            "no blockwise-reversed factorization for cycle of %d" % carrier,
            carrier=carrier,
        )
    if len(solutions) > 1:
        raise NoBlockDecomposition(
            "ambiguous factorization for cycle of %d" % carrier,
            carrier=carrier, count=len(solutions),
        )
    spans_set, r = solutions.popitem()
    spans = sorted(spans_set, key=lambda span: span[0])
    return r, tuple(spans)


def _node_of_block(block):
    """Node (set of crossing pairs) determined by a prime factor."""
    out = set(block)
    for l in range(len(block)):
        for m in range(l + 1, len(block)):
            out.add(W.otimes(block[l], block[m]))
    return frozenset(out)


def _rot(word, r):
    return tuple(word[(p + r) % len(word)] for p in range(len(word)))


class Arrangement:
    """A validated arrangement; immutable once constructed.

    Use :func:`validate`, :func:`from_disk_only` or the generators
    :func:`cyclic_thin` / :func:`all_c64` instead of calling the
    constructor directly.
    """

    def __init__(self, disk, crosscap, S, spans, nodes, node_cycles):
        self.indices = tuple(sorted(disk))
        self.disk = disk            # i -> letter tuple
        self.crosscap = crosscap    # i -> letter tuple, aligned with disk
        self.S = S                  # i -> crossing pair per position
        self.spans = spans          # i -> prime factor position tuples
        self.nodes = nodes          # node frozenset -> {carrier: span index}
        self.node_cycles = node_cycles  # i -> node tuple in walk order
        self._complex = None

    # -- basic derived counts ------------------------------------------

    @property
    def n(self):
        return len(self.indices)

    @property
    def vertex_count(self):
        return len(self.nodes)

    @property
    def edge_count(self):
        return sum(len(s) for s in self.spans.values())

    def blocks(self, i):
        """Prime factors of the slotted disk cycle of ``i``."""
        return tuple(tuple(self.S[i][p] for p in span) for span in self.spans[i])

    def block_of_pair(self, pair, carrier):
        for span in self.spans[carrier]:
            block = tuple(self.S[carrier][p] for p in span)
            if pair in block:
                return block
        raise UnknownIndex("pair %r not on curve %d" % (pair, carrier))

    # -- flag complex and everything it derives ------------------------

    @property
    def complex(self):
        if self._complex is None:
            from .flags import FlagComplex
            self._complex = FlagComplex(self)
        return self._complex

    @property
    def genus(self):
        return self.complex.genus

    @property
    def f_vector(self):
        return self.complex.f_vector

    # -- predicates -----------------------------------------------------

    def is_simple(self):
        return all(len(span) == 1 for s in self.spans.values() for span in s)

    def is_genus_one(self):
        return self.genus == 1

    def is_thin(self):
        """No vertex lies in the crosscap side of any curve."""
        if not self.is_simple():
            return False
        sides = self.complex.vertex_sides
        return all(side < 0 for per_curve in sides.values()
                   for side in per_curve.values())

    def is_martagon(self, i):
        """All crossings with each other curve consecutive along ``i``."""
        if i not in self.indices:
            raise UnknownIndex("no curve %d" % i)
        if any(len(span) != 1 for span in self.spans[i]):
            return False
        word = self.disk[i]
        L = len(word)
        for j in self.indices:
            if j == i:
                continue
            pos = sorted(p for p, x in enumerate(word) if abs(x) == j)
            gaps = [(q - p) % L for p, q in zip(pos, pos[1:] + pos[:1])]
            if sum(1 for g in gaps if g != 1) > 1:
                return False
        return True

    # -- transforms -----------------------------------------------------

    def act(self, sigma):
        """Relabeled/reoriented version: curve at new index k is old curve
        ``sigma(k)``, reversed when the image is negative."""
        inv = sigma.inverse()
        disk, cross = {}, {}
        for k in sigma.images:
            m = sigma(k)
            d = self.disk[abs(m)]
            c = self.crosscap[abs(m)]
            if m < 0:
                d, c = d[::-1], c[::-1]
            disk[k] = tuple(inv(x) for x in d)
            cross[k] = tuple(inv(x) for x in c)
        return validate(disk, cross)

    def mirror(self):
        """Every side cycle read backwards.

        An involution on valid families, but not a homeomorphism of the
        underlying surface: the genus generally changes.  Reflections of
        the ambient surface act trivially on side-cycle data (crosscap
        censuses realize the strip reflection through odd reorientations
        instead; see dpl.mutation).
        """
        return validate({i: w[::-1] for i, w in self.disk.items()},
                        {i: w[::-1] for i, w in self.crosscap.items()})

    def restriction(self, J):
        J = frozenset(J)
        if not J <= set(self.indices):
            raise UnknownIndex("%r is not a subset of %r" % (sorted(J), self.indices))
        if len(J) < 2:
            raise SubsetTooSmall("restriction needs at least 2 indices")
        disk = {i: tuple(x for x in self.disk[i] if abs(x) in J)
                for i in sorted(J)}
        cross = {i: tuple(x for x in self.crosscap[i] if abs(x) in J)
                 for i in sorted(J)}
        return validate(disk, cross)

    # -- canonical form ---------------------------------------------------

    def key(self):
        """Canonical form of the indexed-oriented isotopy class."""
        return (self.indices,
                tuple(W.min_rotation(self.disk[i]) for i in self.indices),
                tuple(W.min_rotation(self.crosscap[i]) for i in self.indices))

    def __eq__(self, other):
        return isinstance(other, Arrangement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Arrangement(indices=%r, V=%d, E=%d)" % (
            self.indices, self.vertex_count, self.edge_count)

    # -- serialization ----------------------------------------------------

    def to_text(self, name=None):
        lines = []
        if name:
            lines.append("# %s" % name)
        lines.append("indices: %s" % " ".join(str(i) for i in self.indices))
        for i in self.indices:
            lines.append("D %d: %s" % (i, " ".join(str(x) for x in self.disk[i])))
        for i in self.indices:
            lines.append("M %d: %s" % (i, " ".join(str(x) for x in self.crosscap[i])))
        return "\n".join(lines) + "\n"

    def to_json(self, name=None):
        data = {
            "indices": list(self.indices),
            "disk_cycles": {str(i): list(self.disk[i]) for i in self.indices},
            "crosscap_cycles": {str(i): list(self.crosscap[i]) for i in self.indices},
            "genus": self.genus,
            "f_vector": {str(s): c for s, c in sorted(self.f_vector.items())},
            "simple": self.is_simple(),
            "thin": self.is_thin(),
        }
        if name:
            data = {"name": name, **data}
        return data


def validate(disk, crosscap):
    """Build an :class:`Arrangement` from side-cycle families, or raise.

    ``disk`` and ``crosscap`` map each index to a sequence of signed
    letters; the rotation of each word is irrelevant.
    """
    disk = {i: tuple(w) for i, w in disk.items()}
    crosscap = {i: tuple(w) for i, w in crosscap.items()}
    indices = tuple(sorted(disk))
    if len(indices) < 2:
        raise SubsetTooSmall("an arrangement needs at least 2 curves")
    if set(crosscap) != set(disk):
        raise FormatError("disk and crosscap cycles cover different indices")
    allowed = set(indices)
    for i in indices:
        for x in disk[i] + crosscap[i]:
            if abs(x) not in allowed:
                raise UnknownIndex("letter %d outside index set in cycle of %d" % (x, i))

    max_block = len(indices) - 1
    S, T, spans, aligned = {}, {}, {}, {}
    for i in indices:
        S[i] = _slot_positions(disk[i], i, _D_ANCHOR)
        t_raw = _slot_positions(crosscap[i], i, _M_ANCHOR)
        r, sp = _decompose(S[i], t_raw, max_block, i)
        spans[i] = sp
        aligned[i] = _rot(crosscap[i], r)
        T[i] = _rot(t_raw, r)

    blocksets = {i: {tuple(S[i][p] for p in span) for span in spans[i]}
                 for i in indices}

    nodes = {}
    node_cycles = {}
    for i in indices:
        cyc = []
        for si, span in enumerate(spans[i]):
            block = tuple(S[i][p] for p in span)
            for p in range(1, len(block) + 1):
                rolled = W.roll(block, p, carrier=i)
                target = W.co_index(block[p - 1], i)
                ok = (tuple(rolled) in blocksets[target] if target > 0
                      else tuple(reversed(rolled)) in blocksets[-target])
                if not ok:
                    raise RollMismatch(
                        "block %r of %d does not transport to cycle %d"
                        % (block, i, target),
                        carrier=i, target=target,
                    )
            node = _node_of_block(block)
            nodes.setdefault(node, {})
            if i in nodes[node]:
                raise RollMismatch(
                    "node %r met twice on curve %d" % (sorted(node), i),
                    carrier=i,
                )
            nodes[node][i] = si
            cyc.append(node)
        node_cycles[i] = tuple(cyc)

    for node, carriers in nodes.items():
        bases = {abs(x) for pair in node for x in pair}
        if set(carriers) != bases:
            raise RollMismatch(
                "node %r seen from %r but involves %r"
                % (sorted(node), sorted(carriers), sorted(bases)),
            )

    return Arrangement(disk, aligned, S, spans, nodes, node_cycles)


def from_disk_only(disk):
    """Arrangement of a simple family given by its disk cycles only.

    For a simple arrangement the crosscap cycle is the disk cycle with all
    letter signs flipped (blockwise reversal of singletons).
    """
    crosscap = {i: tuple(-x for x in w) for i, w in disk.items()}
    arr = validate(disk, crosscap)
    if not arr.is_simple():
        raise NotSimple("derived crosscap cycles produce non-singleton blocks")
    return arr


def cyclic_thin(n, bases=None):
    """Thin double of the cyclic arrangement of ``n`` pseudolines."""
    if bases is None:
        bases = range(1, n + 1)
    bases = tuple(bases)
    if len(bases) < 2:
        raise SubsetTooSmall("cyclic_thin needs n >= 2")
    disk = {}
    for k, i in enumerate(bases):
        cos = bases[k + 1:] + bases[:k]
        word = [x for j in cos for x in (j, j)]
        word += [x for j in cos for x in (-j, -j)]
        disk[i] = tuple(word)
    return from_disk_only(disk)


def all_c64(n, bases=None):
    """The arrangement whose 3-subarrangements all have three crosscap
    tetragons (cyclic block pattern, one class per size)."""
    if bases is None:
        bases = range(1, n + 1)
    bases = tuple(bases)
    if len(bases) < 3:
        raise SubsetTooSmall("all_c64 needs n >= 3")
    disk = {}
    for k, i in enumerate(bases):
        cos = bases[k + 1:] + bases[:k]
        word = [x for j in cos for x in (j, -j)]
        word += [x for j in cos for x in (-j, j)]
        disk[i] = tuple(word)
    return from_disk_only(disk)


# ---------------------------------------------------------------------------
# text / json formats


def parse_text(text):
    """Parse the one-arrangement text format (see README)."""
    indices = None
    disk, crosscap = {}, {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("indices:"):
            indices = [int(t) for t in line[len("indices:"):].split()]
            continue
        kind, _, rest = line.partition(" ")
        if kind not in ("D", "M") or ":" not in rest:
            raise FormatError("unparseable line: %r" % raw)
        head, _, body = rest.partition(":")
        try:
            i = int(head)
            letters = tuple(int(t) for t in body.split())
        except ValueError as exc:
            raise FormatError("unparseable line: %r" % raw) from exc
        (disk if kind == "D" else crosscap)[i] = letters
    if indices is None:
        raise FormatError("missing 'indices:' header")
    if set(disk) != set(indices):
        raise FormatError("disk cycles do not match the header")
    if not crosscap:
        return from_disk_only(disk)
    if set(crosscap) != set(indices):
        raise FormatError("crosscap cycles do not match the header")
    return validate(disk, crosscap)


def load(path):
    with open(path) as fh:
        return parse_text(fh.read())


def dump(arr, path, name=None):
    with open(path, "w") as fh:
        fh.write(arr.to_text(name=name))


def to_json_text(arr, name=None):
    return json.dumps(arr.to_json(name=name), sort_keys=False)
