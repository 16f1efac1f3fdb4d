"""Chirotopes: triple classes, k-extension checking and reconstruction.

A chirotope assigns to every 3-subset of the index set the indexed-oriented
class of the subarrangement on that triple.  A chirotope is a k-chirotope
when every subset of size up to k carries a common extension; 5-chirotopes
are exactly the chirotopes of genus-one arrangements, and the obstruction
at size five is the transitivity of the per-carrier ternary relations read
off the 4-subset cycles.
"""

from itertools import combinations, product

from . import words as W
from .arrangement import Arrangement, validate, from_disk_only
from .errors import (
    BlockInconsistent,
    DplError,
    FormatError,
    NoArrangement,
    NotTotal,
    NotTransitive,
    TooFewIndices,
)

# ---------------------------------------------------------------------------
# naming of triple classes


_NAME_TABLE = None


def _name_table():
    """Canonical words on (1,2,3) -> (class name, signed images)."""
    global _NAME_TABLE
    if _NAME_TABLE is None:
        from . import catalog
        table = {}
        for name in catalog.THIRTEEN:
            ref = catalog.arrangement(name)
            for sigma in W.SignedPermutation.all((1, 2, 3)):
                images = tuple(sigma.inverse()(r) for r in (1, 2, 3))
                ver = ref.act(sigma)
                key = ver.key()
                prev = table.get(key)
                if prev is None or (prev[0] == name and images < prev[1]):
                    table[key] = (name, images)
        _NAME_TABLE = table
    return _NAME_TABLE


def class_version(name, images):
    """The named class with reference indices substituted by ``images``.

    ``class_version("C04", (1, 5, 3))`` is the arrangement on indices
    {1, 3, 5} whose letters substitute 1 -> 1, 2 -> 5, 3 -> 3; a negative
    image reorients the curve.
    """
    from . import catalog
    ref = catalog.arrangement(name)
    sub = dict(zip((1, 2, 3), images))

    def rl(x):
        return sub[abs(x)] if x > 0 else -sub[abs(x)]

    disk, cross = {}, {}
    for r in (1, 2, 3):
        t = sub[r]
        d, m = ref.disk[r], ref.crosscap[r]
        if t < 0:
            d, m = d[::-1], m[::-1]
        disk[abs(t)] = tuple(rl(x) for x in d)
        cross[abs(t)] = tuple(rl(x) for x in m)
    return validate(disk, cross)


def entry_name(arr):
    """Pretty name of a 3-curve class, or None for unnamed classes.

    The arrangement is relabeled order-preservingly onto (1,2,3) before
    lookup; the reported images live in the arrangement's own indices.
    """
    i, j, k = arr.indices
    down = {i: 1, j: 2, k: 3}

    def rl(x):
        return down[abs(x)] if x > 0 else -down[abs(x)]

    std_key = ((1, 2, 3),
               tuple(W.min_rotation(tuple(rl(x) for x in arr.disk[t]))
                     for t in (i, j, k)),
               tuple(W.min_rotation(tuple(rl(x) for x in arr.crosscap[t]))
                     for t in (i, j, k)))
    hit = _name_table().get(std_key)
    if hit is None:
        return None
    name, images = hit
    up = {1: i, 2: j, 3: k}
    final = tuple((1 if images[r - 1] > 0 else -1) * up[abs(images[r - 1])]
                  for r in (1, 2, 3))
    return "%s(%s)" % (name, " ".join(str(x) for x in final))


# ---------------------------------------------------------------------------
# the chirotope object


class Chirotope:
    """Map from 3-subsets to canonicalized triple families."""

    def __init__(self, entries):
        self.entries = {}
        indices = set()
        for J, fam in entries.items():
            J = frozenset(J)
            if len(J) != 3:
                raise FormatError("entry on %r is not a triple" % (sorted(J),))
            indices |= J
            self.entries[J] = {i: (W.min_rotation(d), W.min_rotation(m))
                               for i, (d, m) in fam.items()}
        self.indices = tuple(sorted(indices))
        if len(self.indices) < 3:
            raise TooFewIndices("a chirotope needs at least 3 indices")
        for J in combinations(self.indices, 3):
            if frozenset(J) not in self.entries:
                raise FormatError("missing entry on %r" % (J,))

    def entry(self, J):
        return self.entries[frozenset(J)]

    def entry_arrangement(self, J):
        fam = self.entry(J)
        return validate({i: dm[0] for i, dm in fam.items()},
                        {i: dm[1] for i, dm in fam.items()})

    def entry_label(self, J):
        return entry_name(self.entry_arrangement(J))

    def restriction(self, J):
        J = frozenset(J)
        return Chirotope({T: self.entries[T]
                          for T in self.entries if T <= J})

    def is_simple(self):
        return all(self.entry_arrangement(J).is_simple()
                   for J in self.entries)

    def key(self):
        return tuple(sorted((tuple(sorted(J)),
                             tuple(sorted(fam.items())))
                            for J, fam in self.entries.items()))

    def __eq__(self, other):
        return isinstance(other, Chirotope) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def chirotope_of(arr):
    """The chirotope of a validated arrangement on at least 3 indices."""
    if arr.n < 3:
        raise TooFewIndices("chirotope needs at least 3 curves")
    entries = {}
    for J in combinations(arr.indices, 3):
        sub = arr.restriction(J)
        entries[frozenset(J)] = {i: (sub.disk[i], sub.crosscap[i])
                                 for i in sub.indices}
    return Chirotope(entries)


# ---------------------------------------------------------------------------
# extension search


def _merge_words(base, insert, want_pairs):
    """Cyclic words containing ``base`` (cyclic, anchored) and ``insert``
    (cyclic) as subsequences, with every base-pair subword as required.

    ``want_pairs`` maps a frozenset of bases to the required cyclic word.
    """
    nb, ni = len(base), len(insert)
    total = nb + ni
    out = set()
    for rot in range(ni):
        ins = insert[rot:] + insert[:rot]
        for slots in combinations(range(total), ni):
            word = [None] * total
            it = iter(ins)
            sl = set(slots)
            bi = iter(base)
            for p in range(total):
                word[p] = next(it) if p in sl else next(bi)
            ok = True
            for bases, want in want_pairs.items():
                sub = tuple(x for x in word if abs(x) in bases)
                if not W.cyclic_eq(sub, want):
                    ok = False
                    break
            if ok:
                out.add(W.min_rotation(tuple(word)))
    return sorted(out)


def _carrier_candidates(chi, i, others, kind):
    """Candidate side cycles of carrier ``i`` over three co-indices."""
    a, b, c = others
    sel = 0 if kind == "D" else 1
    w_ab = chi.entry((i, a, b))[i][sel]
    w_ac = chi.entry((i, a, c))[i][sel]
    w_bc = chi.entry((i, b, c))[i][sel]
    c_only = tuple(x for x in w_ac if abs(x) == c)
    want = {frozenset((a, b)): w_ab,
            frozenset((a, c)): tuple(x for x in w_ac),
            frozenset((b, c)): tuple(x for x in w_bc)}
    return _merge_words(w_ab, c_only, want)


def extensions4(chi, genus_one=True):
    """All arrangements on a 4-index chirotope's support matching it."""
    if len(chi.indices) != 4:
        raise TooFewIndices("extensions4 needs exactly 4 indices")
    simple = chi.is_simple()
    cands = {}
    for i in chi.indices:
        others = tuple(x for x in chi.indices if x != i)
        dc = _carrier_candidates(chi, i, others, "D")
        if simple:
            cands[i] = [(d, tuple(-x for x in d)) for d in dc]
        else:
            mc = _carrier_candidates(chi, i, others, "M")
            cands[i] = [(d, m) for d in dc for m in mc]
    out = {}
    for combo in product(*(cands[i] for i in chi.indices)):
        disk = {i: dm[0] for i, dm in zip(chi.indices, combo)}
        cross = {i: dm[1] for i, dm in zip(chi.indices, combo)}
        try:
            arr = validate(disk, cross)
        except DplError:
            continue
        if genus_one and arr.genus != 1:
            continue
        if chirotope_of(arr) != chi:
            continue
        out.setdefault(arr.key(), arr)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# relations of the five-index axiom


class TernaryRelation:
    """Cyclic precedence of same-carrier crossing pairs, read off the
    extensions of the subsets of size up to four."""

    def __init__(self, carrier, flavor, cycles):
        self.carrier = carrier
        self.flavor = flavor          # "D" or "M"
        self._cycles = cycles         # frozenset of bases -> slotted cycle

    def symbols(self):
        out = []
        for bases, cyc in self._cycles.items():
            if len(bases) == 1:
                out.extend(cyc)
        return sorted(set(out))

    def holds(self, alpha, beta, gamma):
        """Do the three distinct pairs appear in this cyclic order?"""
        bases = frozenset(abs(W.co_index(p, self.carrier))
                          for p in (alpha, beta, gamma))
        cyc = self._cycles[bases]
        pos = {p: t for t, p in enumerate(cyc)}
        x, y, z = pos[alpha], pos[beta], pos[gamma]
        return (y - x) % len(cyc) < (z - x) % len(cyc)


def _slotted(word, carrier):
    from .arrangement import _slot_positions, _D_ANCHOR, _M_ANCHOR
    return _slot_positions(word, carrier, _D_ANCHOR)


def _slotted_m(word, carrier):
    from .arrangement import _slot_positions, _M_ANCHOR
    return _slot_positions(word, carrier, _M_ANCHOR)


def relations_from(chi, genus_one=True):
    """Per-carrier ternary and block relations; verifies the axioms.

    Returns ``{(carrier, flavor): TernaryRelation}`` together with the
    block partners; raises NotTotal/NotTransitive/BlockInconsistent with a
    witness subset on failure.
    """
    ext4 = {}
    for J in combinations(chi.indices, 4):
        sols = extensions4(chi.restriction(J), genus_one=genus_one)
        if not sols:
            raise NoArrangement("no extension on %r" % (J,), subset=J)
        if len(sols) > 1:
            raise NoArrangement("ambiguous extension on %r" % (J,), subset=J)
        ext4[frozenset(J)] = sols[0]

    rels = {}
    blocks = {}
    for i in chi.indices:
        cos = [x for x in chi.indices if x != i]
        for flavor in "DM":
            cycles = {}
            for bases in combinations(cos, 3):
                arr = ext4[frozenset((i,) + bases)]
                word = arr.disk[i] if flavor == "D" else arr.crosscap[i]
                cycles[frozenset(bases)] = (
                    _slotted(word, i) if flavor == "D" else _slotted_m(word, i))
            for bases in combinations(cos, 2):
                fam = chi.entry((i,) + bases)[i]
                word = fam[0] if flavor == "D" else fam[1]
                cycles[frozenset(bases)] = (
                    _slotted(word, i) if flavor == "D" else _slotted_m(word, i))
            for b in cos:
                cycles[frozenset((b,))] = tuple(
                    W.pair_of(i, b, s) for s in (1, 2, 3, 4))
            rels[(i, flavor)] = TernaryRelation(i, flavor, cycles)
            if flavor == "D":
                partner = {}
                for bases in combinations(cos, 2):
                    arr = chi.entry_arrangement((i,) + bases)
                    for block in arr.blocks(i):
                        for a, b in zip(block, block[1:]):
                            partner.setdefault(a, set()).add(b)
                blocks[i] = partner
    _verify_relations(chi, rels, blocks)
    return rels, blocks


def _verify_relations(chi, rels, blocks):
    for (i, flavor), rel in rels.items():
        syms = rel.symbols()
        for alpha, beta, gamma in combinations(syms, 3):
            fwd = rel.holds(alpha, beta, gamma)
            bwd = rel.holds(alpha, gamma, beta)
            if fwd == bwd:
                raise NotTotal(
                    "relation of carrier %d not total" % i,
                    carrier=i, flavor=flavor,
                    witness=sorted({i} | {abs(W.co_index(p, i))
                                          for p in (alpha, beta, gamma)}))
        anchor = syms[0]
        rest = sorted(syms[1:],
                      key=_cmp_key(rel, anchor))
        order = [anchor] + rest
        pos = {p: t for t, p in enumerate(order)}
        for alpha, beta, gamma in combinations(syms, 3):
            expected = _cyclic_before(pos, alpha, beta, gamma)
            if rel.holds(alpha, beta, gamma) != expected:
                raise NotTransitive(
                    "relation of carrier %d not transitive" % i,
                    carrier=i, flavor=flavor,
                    witness=sorted({i, abs(W.co_index(anchor, i))}
                                   | {abs(W.co_index(p, i))
                                      for p in (alpha, beta, gamma)}))
        rel.order = tuple(order)
    for i, partner in blocks.items():
        for a, succs in partner.items():
            for b in succs:
                for c in partner.get(b, ()):
                    if c not in partner.get(a, set()) and c != a:
                        raise BlockInconsistent(
                            "block relation of carrier %d not transitive" % i,
                            carrier=i)


def _cmp_key(rel, anchor):
    import functools

    def cmp(x, y):
        if x == y:
            return 0
        return -1 if rel.holds(anchor, x, y) else 1

    return functools.cmp_to_key(cmp)


def _cyclic_before(pos, alpha, beta, gamma):
    x, y, z = pos[alpha], pos[beta], pos[gamma]
    n = len(pos)
    return (y - x) % n < (z - x) % n


# ---------------------------------------------------------------------------
# reconstruction


def reconstruct(chi, genus_one=True, all_solutions=False):
    """Arrangements realizing the chirotope.

    With the genus filter the result is unique (double-pseudoline
    semantics); without it the search accepts any-genus extensions.
    Raises NoArrangement, or the relation errors for n >= 5.
    """
    n = len(chi.indices)
    if n == 3:
        sols = [chi.entry_arrangement(chi.indices)]
        if genus_one:
            sols = [a for a in sols if a.genus == 1]
    elif n == 4:
        sols = extensions4(chi, genus_one=genus_one)
    else:
        sols = _reconstruct_big(chi, genus_one=genus_one)
    if not sols:
        raise NoArrangement("chirotope has no realization",
                            genus_one=genus_one)
    if all_solutions:
        return sols
    if genus_one and len(sols) > 1:
        raise NoArrangement("genus-one realization is not unique",
                            count=len(sols))
    return sols[0]


def _reconstruct_big(chi, genus_one):
    rels, blocks = relations_from(chi, genus_one=genus_one)
    disk, cross = {}, {}
    for i in chi.indices:
        order = rels[(i, "D")].order
        partner = blocks[i]
        word = [abs(W.co_index(p, i)) *
                (1 if W.carrier_part(p, i) > 0 else -1) for p in order]
        # group consecutive block partners, allowing wrap-around
        L = len(order)
        starts = [t for t in range(L)
                  if order[t] not in partner.get(order[t - 1], set())]
        if not starts:
            raise BlockInconsistent("cycle of %d is one big factor" % i,
                                    carrier=i)
        spans = []
        for s, nxt in zip(starts, starts[1:] + [starts[0] + L]):
            spans.append([t % L for t in range(s, nxt)])
        mword = [None] * L
        for span in spans:
            dspan = [word[t] for t in span]
            for t, x in zip(span, reversed(dspan)):
                mword[t] = -x
        disk[i] = tuple(word)
        cross[i] = tuple(mword)
    arr = validate(disk, cross)
    if genus_one and arr.genus != 1:
        return []
    if chirotope_of(arr) != chi:
        raise NoArrangement("reconstructed family has a different chirotope")
    return [arr]


def is_k_chirotope(chi, k, diagnose=False):
    """True iff every k-subset admits a genus-one extension."""
    if not 3 <= k <= len(chi.indices):
        raise TooFewIndices("k must be between 3 and %d" % len(chi.indices))
    for J in combinations(chi.indices, k):
        try:
            reconstruct(chi.restriction(J), genus_one=True)
        except DplError as exc:
            return (False, {"subset": sorted(J), **exc.report()}) if diagnose \
                else False
    return (True, None) if diagnose else True


# ---------------------------------------------------------------------------
# file format


def parse_chirotope(text):
    indices = None
    entries = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("indices:"):
            indices = [int(t) for t in line[len("indices:"):].split()]
            continue
        if not line.startswith("chi "):
            raise FormatError("unparseable line: %r" % raw)
        head, _, body = line[4:].partition(":")
        J = tuple(int(t) for t in head.split())
        body = body.strip()
        if "(" in body and body.endswith(")"):
            name, _, args = body[:-1].partition("(")
            images = tuple(int(t) for t in args.split())
            arr = class_version(name.strip(), images)
        else:
            fam = {}
            for part in body.split("|"):
                kind, _, letters = part.strip().partition("=")
                kind = kind.strip()
                which, idx = kind[0], int(kind[1:])
                fam.setdefault(idx, {})[which] = tuple(
                    int(t) for t in letters.split())
            disk = {i: v["D"] for i, v in fam.items()}
            cross = {i: v["M"] for i, v in fam.items() if "M" in v}
            arr = validate(disk, cross) if cross else from_disk_only(disk)
        if set(arr.indices) != set(J):
            raise FormatError("entry indices %r do not match header of %r"
                              % (arr.indices, J))
        entries[frozenset(J)] = {i: (arr.disk[i], arr.crosscap[i])
                                 for i in arr.indices}
    if indices is None:
        raise FormatError("missing 'indices:' header")
    chi = Chirotope(entries)
    if set(chi.indices) != set(indices):
        raise FormatError("entries do not cover the declared index set")
    return chi


def chirotope_text(chi):
    lines = ["indices: %s" % " ".join(str(i) for i in chi.indices)]
    for J in combinations(chi.indices, 3):
        label = chi.entry_label(J)
        if label:
            lines.append("chi %d %d %d: %s" % (*J, label))
        else:
            fam = chi.entry(J)
            parts = []
            for i in sorted(fam):
                parts.append("D%d= %s" % (i, " ".join(map(str, fam[i][0]))))
            for i in sorted(fam):
                parts.append("M%d= %s" % (i, " ".join(map(str, fam[i][1]))))
            lines.append("chi %d %d %d: %s" % (*J, " | ".join(parts)))
    return "\n".join(lines) + "\n"
