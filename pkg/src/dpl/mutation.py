"""Mutations, flip-graph enumeration and censuses.

A *merge* collapses a triangular 2-cell onto the vertex opposite the
moving curve; a *split* releases the moving curve off a multiple vertex
to one of its two sides; a *flip* is a merge immediately followed by the
non-inverse split and maps simple arrangements to simple arrangements
(it inverts the triangle, swapping one adjacent letter pair per support
in both side cycles).

Enumeration walks the flip graph from the thin cyclic seed with canonical
dedup.  In the crosscap (Moebius) setting states carry a marked 2-cell
contained in the disk side of every curve; a flip is admissible when the
inverted triangle is not the marked cell, and the marked cell is tracked
through the move by one of its corner flags away from the triangle.
"""

from collections import Counter, deque

from . import words as W
from .arrangement import Arrangement, cyclic_thin, from_disk_only, validate
from .errors import DplError, IllegalLocus, ResourceLimit

# ---------------------------------------------------------------------------
# lean engine for simple arrangements (states are disk-word families)


class SimpleState:
    """Flag structures of a simple arrangement given by its disk cycles."""

    __slots__ = ("indices", "words", "pairs", "pos", "offset", "nflags",
                 "s0", "s1", "s2", "_faces", "_face_of")

    def __init__(self, indices, words):
        self.indices = indices
        self.words = words
        from .arrangement import _slot_positions, _D_ANCHOR
        self.pairs = {i: _slot_positions(words[k], i, _D_ANCHOR)
                      for k, i in enumerate(indices)}
        pos = {}
        for i in indices:
            for p, pair in enumerate(self.pairs[i]):
                pos.setdefault(pair, {})[i] = p
        self.pos = pos
        offset = {}
        total = 0
        for k, i in enumerate(indices):
            offset[i] = total
            total += 4 * len(words[k])
        self.offset = offset
        self.nflags = total
        self._build_sigmas()
        self._faces = None
        self._face_of = None

    def fid(self, i, p, eps, side):
        return self.offset[i] + 4 * p + (0 if eps > 0 else 2) + (0 if side > 0 else 1)

    def flag(self, f):
        for i in reversed(self.indices):
            if f >= self.offset[i]:
                rest = f - self.offset[i]
                p, low = divmod(rest, 4)
                return (i, p, 1 if low < 2 else -1, 1 if low % 2 == 0 else -1)
        raise AssertionError

    def _build_sigmas(self):
        n = self.nflags
        s0 = [0] * n
        s1 = [0] * n
        s2 = [0] * n
        from .flags import _sig1_signs
        for f in range(n):
            i, p, eps, side = self.flag(f)
            L = len(self.pairs[i])
            s0[f] = self.fid(i, (p + eps) % L, -eps, side)
            s2[f] = self.fid(i, p, eps, -side)
            pair = self.pairs[i][p]
            slot = W.slot_of(pair, i)
            eps2, side2 = _sig1_signs(slot, eps, side)
            j = abs(W.co_index(pair, i))
            s1[f] = self.fid(j, self.pos[pair][j], eps2, side2)
        self.s0, self.s1, self.s2 = s0, s1, s2

    @property
    def faces(self):
        if self._faces is None:
            seen = bytearray(self.nflags)
            faces = []
            face_of = [0] * self.nflags
            for f in range(self.nflags):
                if seen[f]:
                    continue
                orbit = [f]
                seen[f] = 1
                stack = [f]
                while stack:
                    g = stack.pop()
                    for h in (self.s0[g], self.s1[g]):
                        if not seen[h]:
                            seen[h] = 1
                            orbit.append(h)
                            stack.append(h)
                t = len(faces)
                for g in orbit:
                    face_of[g] = t
                faces.append(tuple(orbit))
            self._faces = faces
            self._face_of = face_of
        return self._faces

    @property
    def face_of(self):
        self.faces
        return self._face_of

    def descriptor(self, f):
        i, p, eps, side = self.flag(f)
        return (i, self.pairs[i][p], eps, side)

    def flag_from_descriptor(self, desc):
        i, pair, eps, side = desc
        return self.fid(i, self.pos[pair][i], eps, side)

    def face_descriptors(self, t):
        return frozenset(self.descriptor(f) for f in self.faces[t])

    def triangles(self):
        """(face index, ((curve, swap position), ...), corner pairs)."""
        out = []
        for t, face in enumerate(self.faces):
            if len(face) != 6:
                continue
            per_curve = {}
            for f in face:
                i, p, eps, side = self.flag(f)
                per_curve.setdefault(i, []).append((p, eps))
            swaps = []
            corners = set()
            for i, fl in per_curve.items():
                L = len(self.pairs[i])
                (p1, e1), (p2, e2) = fl
                a = p1 if e1 > 0 else p2
                b = p2 if e1 > 0 else p1
                assert (a + 1) % L == b
                swaps.append((i, a))
                corners.add(self.pairs[i][a])
                corners.add(self.pairs[i][b])
            out.append((t, tuple(sorted(swaps)), frozenset(corners)))
        return out

    def face_sides(self):
        """face -> {curve: side}; -1 is the disk side."""
        faces = self.faces
        sides = [dict() for _ in faces]
        for f in range(self.nflags):
            i, p, eps, side = self.flag(f)
            sides[self.face_of[f]][i] = side
        adj = {}
        for f in range(self.nflags):
            i, p, eps, side = self.flag(f)
            arc = p if eps > 0 else (p - 1) % len(self.pairs[i])
            adj.setdefault((i, arc), set()).add(self.face_of[f])
        pairs = []
        for (i, arc), ts in adj.items():
            ts = tuple(ts)
            pairs.append((ts[0], ts[-1], i))
        for curve in self.indices:
            todo = deque(t for t in range(len(faces)) if curve in sides[t])
            known = {t: sides[t][curve] for t in todo}
            while todo:
                t = todo.popleft()
                for a, b, i in pairs:
                    if t not in (a, b):
                        continue
                    u = b if t == a else a
                    val = known[t] * (-1 if i == curve else 1)
                    if u in known:
                        assert known[u] == val
                    else:
                        known[u] = val
                        sides[u][curve] = val
                        todo.append(u)
        return sides


def _swap_words(indices, words, swaps):
    new = list(words)
    for i, a in swaps:
        k = indices.index(i)
        w = list(new[k])
        b = (a + 1) % len(w)
        w[a], w[b] = w[b], w[a]
        new[k] = tuple(w)
    return tuple(new)


def _words_key(words):
    return tuple(W.min_rotation(w) for w in words)


def act_words(sigma, indices, words):
    """Word-family transform under a signed permutation (no validation)."""
    inv = sigma.inverse()
    out = []
    for k in indices:
        m = sigma(k)
        w = words[indices.index(abs(m))]
        if m < 0:
            w = w[::-1]
        out.append(tuple(inv(x) for x in w))
    return tuple(out)


def transport_descriptor(sigma, desc):
    """Flag descriptor of ``act(sigma, .)`` matching ``desc``.

    The crossing pair relabels through the inverse permutation and is
    negated when exactly one of its two curves is reoriented.
    """
    inv = sigma.inverse()
    i, pair, eps, side = desc
    ii = inv(i)
    flips = sum(1 for x in pair if inv(abs(x)) < 0)
    new_pair = W.act_pair(inv, pair)
    if flips == 1:
        new_pair = (-new_pair[1], -new_pair[0])
    return (abs(ii), new_pair, eps if ii > 0 else -eps, side)


# ---------------------------------------------------------------------------
# projective flip enumeration


def projective_census(n, simple_only=True, limit=None, seed_all_versions=False):
    """Flip-BFS over simple indexed-oriented states from the thin cyclic seed.

    Returns the discovered indexed classes (key -> word family), the flip
    adjacency between keys, and the grouping into plain isomorphism classes.
    """
    if not simple_only:
        raise IllegalLocus("non-simple projective walks are not wired to a "
                           "census; use merge/split moves via apply()")
    seed = cyclic_thin(n)
    indices = seed.indices
    base = tuple(seed.disk[i] for i in indices)
    seeds = [base]
    if seed_all_versions:
        seeds = [act_words(s, indices, base)
                 for s in W.SignedPermutation.all(indices)]
    visited = {}
    queue = deque()
    edges = set()
    for w in seeds:
        k = _words_key(w)
        if k not in visited:
            visited[k] = w
            queue.append(k)
    while queue:
        key = queue.popleft()
        if limit is not None and len(visited) > limit:
            raise ResourceLimit("state cap %d exceeded" % limit,
                                partial=len(visited))
        st = SimpleState(indices, visited[key])
        for t, swaps, corners in st.triangles():
            nw = _swap_words(indices, visited[key], swaps)
            nk = _words_key(nw)
            edges.add((min(key, nk), max(key, nk)))
            if nk not in visited:
                visited[nk] = nw
                queue.append(nk)
    plain = {}
    for key, w in visited.items():
        arr = from_disk_only(dict(zip(indices, w)))
        plain.setdefault(arr.complex.canonical_key("plain"), []).append(key)
    return {
        "indices": indices,
        "indexed_classes": visited,
        "edges": edges,
        "plain_classes": plain,
    }


def connectivity_check(census):
    """Is the flip graph restricted to the discovered classes connected?"""
    keys = set(census["indexed_classes"])
    if not keys:
        return True
    adj = {}
    for a, b in census["edges"]:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = {next(iter(keys))}
    todo = deque(seen)
    while todo:
        k = todo.popleft()
        for u in adj.get(k, ()):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen == keys


def pumping_check(arr, gamma):
    """Vertices in the crosscap side of ``gamma`` force a triangle there
    with a side supported by ``gamma``; vacuous for thin curves."""
    cx = arr.complex
    inside = [nd for nd, sides in cx.vertex_sides.items()
              if sides.get(gamma, -1) > 0]
    if not inside:
        return True
    for t, face in enumerate(cx.faces):
        if len(face) != 6:
            continue
        if cx.face_sides[t][gamma] <= 0:
            continue
        if any(cx.flags[f][2] == gamma for f in face):
            return True
    return False


# ---------------------------------------------------------------------------
# crosscap (Moebius) censuses
#
# A state is a marked arrangement: word family plus a 2-cell contained in
# the disk side of every curve (the cell of the line at infinity).  The
# counting equivalences are calibrated against the published n <= 3 rows
# and frozen:
#
#   a: even-weight reorientations, plus pure sign-changes of odd weight
#      that fix the underlying word family (those realize the reflection
#      of the strip on symmetric arrangements);
#   b: additionally all reindexings;
#   c: the full signed permutation group (isomorphism classes);
#   d: full-group classes of the underlying unmarked families.


def _admissible_faces(st):
    return [t for t, sides in enumerate(st.face_sides())
            if all(v < 0 for v in sides.values())]


def moebius_simple_census(n, limit=None, progress=None):
    """BFS over marked simple states; returns (indices, key -> state).

    States are pairs (word family, flag descriptor of the marked cell);
    the key is rotation-canonical.
    """
    seed = cyclic_thin(n)
    indices = seed.indices
    base = tuple(seed.disk[i] for i in indices)
    visited = {}
    queue = deque()
    for sigma in W.SignedPermutation.all(indices):
        w = act_words(sigma, indices, base)
        st = SimpleState(indices, w)
        for t in _admissible_faces(st):
            descs = st.face_descriptors(t)
            key = (_words_key(w), min(descs))
            if key not in visited:
                visited[key] = (w, min(descs))
                queue.append(key)
    while queue:
        key = queue.popleft()
        if limit is not None and len(visited) > limit:
            raise ResourceLimit("state cap %d exceeded" % limit,
                                partial=len(visited))
        words, desc = visited[key]
        st = SimpleState(indices, words)
        marked = st.face_of[st.flag_from_descriptor(desc)]
        marked_descs = st.face_descriptors(marked)
        for t, swaps, corners in st.triangles():
            if t == marked:
                continue
            survivors = [d for d in marked_descs if d[1] not in corners]
            assert survivors, "marked cell lost all corners"
            nw = _swap_words(indices, words, swaps)
            st2 = SimpleState(indices, nw)
            t2 = st2.face_of[st2.flag_from_descriptor(survivors[0])]
            nk = (_words_key(nw), min(st2.face_descriptors(t2)))
            if nk not in visited:
                visited[nk] = (nw, survivors[0])
                queue.append(nk)
            if progress and len(visited) % progress == 0:
                print("  ... frontier %d states %d" % (len(queue), len(visited)))
    return indices, visited


def _census_groups(indices):
    from itertools import permutations, product
    n = len(indices)
    perms = list(permutations(indices))
    signs = list(product((1, -1), repeat=n))
    evens = [s for s in signs if s.count(-1) % 2 == 0]
    odds = [s for s in signs if s.count(-1) % 2 == 1]

    def grp(ps, sgs):
        return [W.SignedPermutation(dict(zip(indices, (s * v for v, s in zip(p, sg)))))
                for p in ps for sg in sgs]

    return {
        "evens": grp([tuple(indices)], evens),
        "perm_evens": grp(perms, evens),
        "full": grp(perms, signs),
        "odd_pure": grp([tuple(indices)], odds),
    }


class _UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def count(self):
        return len({self.find(k) for k in self.parent})


def _marked_classes(indices, tagsets, group, odd_pure):
    """Number of classes of marked states under the calibrated equivalence."""
    uf = _UnionFind(tagsets)
    for key, (words, tags) in tagsets.items():
        wk = _words_key(words)
        for sigma in group:
            nw = act_words(sigma, indices, words)
            nk = (_words_key(nw),
                  min(transport_descriptor(sigma, d) for d in tags))
            if nk in tagsets:
                uf.union(key, nk)
        for sigma in odd_pure:
            if _words_key(act_words(sigma, indices, words)) != wk:
                continue
            nk = (wk, min(transport_descriptor(sigma, d) for d in tags))
            if nk in tagsets:
                uf.union(key, nk)
    return uf.count()


def moebius_census(n, simple_only=True, limit=None, threads=1, progress=None):
    """Counting row of the crosscap census.

    Returns ``{"n", "a", "b", "c", "d"}``; with ``simple_only`` false the
    walk also crosses non-simple states (merge/split moves) and the "a"
    count is the total number of marked classes.
    """
    if simple_only:
        indices, visited = moebius_simple_census(n, limit=limit,
                                                 progress=progress)
        tagsets = {}
        for key, (words, desc) in visited.items():
            st = SimpleState(indices, words)
            t = st.face_of[st.flag_from_descriptor(desc)]
            tagsets[key] = (words, st.face_descriptors(t))
    else:
        indices, tagsets = moebius_full_census(n, limit=limit)
    g = _census_groups(indices)
    a = _marked_classes(indices, tagsets, g["evens"], g["odd_pure"])
    b = _marked_classes(indices, tagsets, g["perm_evens"], g["odd_pure"])
    c = _marked_classes(indices, tagsets, g["full"], [])
    dset = set()
    for key, (words, tags) in tagsets.items():
        dset.add(min(_words_key(act_words(s, indices, words))
                     for s in g["full"]))
    return {"n": n, "a": a, "b": b, "c": c, "d": len(dset)}


# ---------------------------------------------------------------------------
# merge / split / flip on validated arrangements


class MutationMove:
    """A merge (triangle onto its opposite vertex), split (curve off a
    multiple vertex, to one of two sides) or flip (merge + other split)."""

    __slots__ = ("kind", "locus", "moving", "side")

    def __init__(self, kind, locus, moving=None, side=None):
        if kind not in ("merge", "split", "flip"):
            raise IllegalLocus("unknown move kind %r" % kind)
        self.kind = kind
        self.locus = locus
        self.moving = moving
        self.side = side

    def __repr__(self):
        return "MutationMove(%r, %r, moving=%r, side=%r)" % (
            self.kind, self.locus, self.moving, self.side)


def triangles(arr):
    """(face index, movable curve) pairs for merge/flip moves."""
    cx = arr.complex
    out = []
    for t, face in enumerate(cx.faces):
        if len(face) != 6:
            continue
        nodes = {cx.flags[f][0] for f in face}
        if any(len(cx.node_list[nd]) != 1 for nd in nodes):
            continue  # only all-simple corners admit a single-incidence move
        for curve in sorted({cx.flags[f][2] for f in face}):
            out.append((t, curve))
    return out


def _corner_positions(arr, cx, face):
    """Per support curve, the adjacent position pair of the two corners."""
    per_curve = {}
    for f in face:
        nd, eps, i, side = cx.flags[f]
        node = cx.node_list[nd]
        span = arr.spans[i][cx.block_index[(nd, i)]]
        assert len(span) == 1
        per_curve.setdefault(i, set()).add(span[0])
    swaps = {}
    for i, ps in per_curve.items():
        L = len(arr.disk[i])
        p, q = sorted(ps)
        if (p + 1) % L == q:
            swaps[i] = p
        elif (q + 1) % L == p:
            swaps[i] = q
        else:
            raise IllegalLocus("face corners not adjacent on curve %d" % i)
    return swaps


def _swap_adjacent(word, p):
    w = list(word)
    q = (p + 1) % len(w)
    w[p], w[q] = w[q], w[p]
    return tuple(w)


def _split_candidates(arr, node, m):
    """The two valid releases of ``m`` off the vertex, keyed canonically.

    Candidate words are enumerated over the per-carrier placements of the
    released crossings (the kept vertex keeps its factor order; crosscap
    spans are forced by the blockwise-reversal rule) and filtered through
    validation.
    """
    from itertools import product as _product
    bases = sorted({abs(x) for pair in node for x in pair})
    carriers = [c for c in bases if c != m] + [m]
    outs = {}
    for choice in _product((True, False), repeat=len(carriers)):
        disk = dict(arr.disk)
        cross = dict(arr.crosscap)
        for c, head in zip(carriers, choice):
            span = arr.spans[c][arr.nodes[node][c]]
            dspan = [arr.disk[c][p] for p in span]
            if c == m:
                nd = dspan if head else dspan[::-1]
                nm = [-x for x in nd]
            else:
                k = next(t for t, x in enumerate(dspan) if abs(x) == m)
                mlet = dspan[k]
                residual = dspan[:k] + dspan[k + 1:]
                nd = [mlet] + residual if head else residual + [mlet]
                rev = [-x for x in residual[::-1]]
                nm = ([-mlet] + rev) if head else (rev + [-mlet])
            dw, mw = list(disk[c]), list(cross[c])
            for p, x, y in zip(span, nd, nm):
                dw[p], mw[p] = x, y
            disk[c], cross[c] = tuple(dw), tuple(mw)
        try:
            out = validate(disk, cross)
        except DplError:
            continue
        if node in out.nodes:
            continue  # vertex not actually split
        if out.genus != arr.genus:
            continue  # a mutation never changes the surface
        outs.setdefault(out.key(), out)
    if len(outs) != 2:
        raise IllegalLocus(
            "vertex %r admits %d releases of %d, expected 2"
            % (sorted(node), len(outs), m))
    return [outs[k] for k in sorted(outs)]


def apply_move(arr, move):
    """Apply a mutation move and return the validated result."""
    cx = arr.complex
    if move.kind in ("merge", "flip"):
        t = move.locus
        face = cx.faces[t]
        if len(face) != 6:
            raise IllegalLocus("face %d is not a triangle" % t)
        supports = {cx.flags[f][2] for f in face}
        if move.moving is not None and move.moving not in supports:
            raise IllegalLocus("curve %r does not support face %d"
                               % (move.moving, t))
        nodes = {cx.flags[f][0] for f in face}
        if any(len(cx.node_list[nd]) != 1 for nd in nodes):
            raise IllegalLocus("triangle has a corner on a multiple vertex")
        swaps = _corner_positions(arr, cx, face)
        sides = cx.face_sides[t]
        disk = dict(arr.disk)
        cross = dict(arr.crosscap)
        for i, p in swaps.items():
            if move.kind == "flip":
                disk[i] = _swap_adjacent(disk[i], p)
                cross[i] = _swap_adjacent(cross[i], p)
            elif sides[i] > 0:
                # collapsing from the crosscap side reorders that wheel
                cross[i] = _swap_adjacent(cross[i], p)
            else:
                disk[i] = _swap_adjacent(disk[i], p)
        return validate(disk, cross)

    if move.kind == "split":
        node = move.locus
        if node not in arr.nodes:
            raise IllegalLocus("unknown node %r" % (node,))
        bases = {abs(x) for pair in node for x in pair}
        if len(bases) < 3:
            raise IllegalLocus("vertex %r is already simple" % (sorted(node),))
        m = move.moving
        if m not in bases:
            raise IllegalLocus("curve %r not through the vertex" % m)
        first, second = _split_candidates(arr, node, m)
        return first if move.side != "b" else second

    raise IllegalLocus("unknown move kind %r" % move.kind)


def inverse_split(arr, merged, node, moving):
    """The split of ``merged`` at ``node`` undoing a merge back to ``arr``."""
    for side in ("a", "b"):
        out = apply_move(merged, MutationMove("split", node, moving, side))
        if out.key() == arr.key():
            return MutationMove("split", node, moving, side)
    raise IllegalLocus("no split of %r restores the original" % (sorted(node),))


# ---------------------------------------------------------------------------
# full (non-simple) marked walk


def _heavy_descs(cx, t):
    out = set()
    for f in cx.faces[t]:
        nd, eps, i, side = cx.flags[f]
        out.add((i, tuple(sorted(cx.node_list[nd])), eps, side))
    return frozenset(out)


def _heavy_lookup(cx, desc):
    i, node_tuple, eps, side = desc
    nd = cx.node_id[frozenset(node_tuple)]
    return cx.fid[(nd, eps, i, side)]


def transport_heavy_descriptor(sigma, desc):
    inv = sigma.inverse()
    i, node_tuple, eps, side = desc
    ii = inv(i)
    node2 = []
    for pair in node_tuple:
        flips = sum(1 for x in pair if inv(abs(x)) < 0)
        p2 = W.act_pair(inv, pair)
        if flips == 1:
            p2 = (-p2[1], -p2[0])
        node2.append(p2)
    return (abs(ii), tuple(sorted(node2)), eps if ii > 0 else -eps, side)


def moebius_full_census(n, limit=None):
    """Merge/split BFS over marked states of any simplicity (n small).

    Returns (indices, key -> (word family or None, marked descriptor set));
    states are heavy (validated arrangements), keys canonical.
    """
    seed = cyclic_thin(n)
    indices = seed.indices
    visited = {}
    reps = {}
    queue = deque()

    def state_key(arr, tagset):
        return (arr.key(), min(tagset))

    def push(arr, desc):
        cx = arr.complex
        t = cx.faces.index(None) if False else None
        f = _heavy_lookup(cx, desc)
        face = next(tt for tt, fc in enumerate(cx.faces) if f in fc)
        tags = _heavy_descs(cx, face)
        key = (arr.key(), min(tags))
        if key not in visited:
            visited[key] = (arr, min(tags))
            reps[key] = tags
            queue.append(key)

    for sigma in W.SignedPermutation.all(indices):
        arr = seed.act(sigma)
        cx = arr.complex
        for t in cx.admissible_cells():
            push(arr, min(_heavy_descs(cx, t)))

    while queue:
        key = queue.popleft()
        if limit is not None and len(visited) > limit:
            raise ResourceLimit("state cap %d exceeded" % limit,
                                partial=len(visited))
        arr, desc = visited[key]
        cx = arr.complex
        f = _heavy_lookup(cx, desc)
        marked = next(t for t, fc in enumerate(cx.faces) if f in fc)
        marked_tags = _heavy_descs(cx, marked)
        marked_nodes = {frozenset(d[1]) for d in marked_tags}

        moves = []
        seen_faces = set()
        for t, curve in triangles(arr):
            if t == marked or t in seen_faces:
                continue
            seen_faces.add(t)
            moves.append((MutationMove("merge", t, curve),
                          {frozenset(cx.node_list[cx.flags[f2][0]])
                           for f2 in cx.faces[t]}))
        for node in arr.nodes:
            bases = {abs(x) for pair in node for x in pair}
            if len(bases) < 3:
                continue
            for m in sorted(bases):
                for side in ("a", "b"):
                    moves.append((MutationMove("split", node, m, side),
                                  {node}))
        for move, dead_nodes in moves:
            survivors = [d for d in marked_tags
                         if frozenset(d[1]) not in dead_nodes]
            assert survivors, "marked cell lost all corners"
            out = apply_move(arr, move)
            push(out, survivors[0])

    tagsets = {}
    for key, (arr, desc) in visited.items():
        tagsets[key] = (arr, reps[key])
    return indices, tagsets


def moebius_chirotope_counts(n, limit=None):
    """Marked classes (all and simple) under the `a`-equivalence.

    On three indices these are the numbers of crosscap chirotopes.
    """
    indices, heavy = moebius_full_census(n, limit=limit)
    g = _census_groups(indices)

    def classes(subset):
        uf = _UnionFind(subset)
        for key in subset:
            arr, tags = heavy[key]
            wk = arr.key()
            for sigma in g["evens"] + g["odd_pure"]:
                arr2 = arr.act(sigma)
                if sigma in g["odd_pure"] and arr2.key() != wk:
                    continue
                tags2 = frozenset(transport_heavy_descriptor(sigma, d)
                                  for d in tags)
                nk = (arr2.key(), min(tags2))
                if nk in subset:
                    uf.union(key, nk)
        return uf.count()

    total = classes(set(heavy))
    simple = classes({k for k, (arr, _) in heavy.items() if arr.is_simple()})
    return {"n": n, "total": total, "simple": simple}


# ---------------------------------------------------------------------------
# large-census fast path
#
# The BFS above rebuilds full flag structures per edge; for the n = 4
# stretch census the neighbor's marked-face tag is computed lazily by
# walking a single face, and the quotients minimize over the group with
# per-cycle pruning.

from .arrangement import _D_ANCHOR, _slot_positions
from .flags import _sig1_signs


def _fast_tag(indices, words, desc):
    """(canonical words, canonical marked tag) without a full state build."""
    pairs = {i: _slot_positions(words[k], i, _D_ANCHOR)
             for k, i in enumerate(indices)}
    pos = {}
    for i in indices:
        for p, pair in enumerate(pairs[i]):
            pos.setdefault(pair, {})[i] = p
    i0, pair0, eps0, side0 = desc
    start = (i0, pos[pair0][i0], eps0, side0)
    seen = {start}
    stack = [start]
    while stack:
        i, p, eps, side = stack.pop()
        L = len(pairs[i])
        nxt = (i, (p + eps) % L, -eps, side)
        pair = pairs[i][p]
        slot = W.slot_of(pair, i)
        eps2, side2 = _sig1_signs(slot, eps, side)
        j = abs(W.co_index(pair, i))
        swap = (j, pos[pair][j], eps2, side2)
        for g in (nxt, swap):
            if g not in seen:
                seen.add(g)
                stack.append(g)
    tag = min((i, pairs[i][p], eps, side) for i, p, eps, side in seen)
    return (_words_key(words), tag)


def moebius_states(n, limit=None, progress=None):
    """Marked simple states by flip BFS; fast-path tag computation.

    Returns (indices, {key: (words, descriptor)}).
    """
    seed = cyclic_thin(n)
    indices = seed.indices
    base = tuple(seed.disk[i] for i in indices)
    visited = {}
    queue = deque()
    for sigma in W.SignedPermutation.all(indices):
        w = act_words(sigma, indices, base)
        st = SimpleState(indices, w)
        for t in _admissible_faces(st):
            desc = min(st.face_descriptors(t))
            key = (_words_key(w), desc)
            if key not in visited:
                visited[key] = (w, desc)
                queue.append(key)
    done = 0
    while queue:
        key = queue.popleft()
        if limit is not None and len(visited) > limit:
            raise ResourceLimit("state cap %d exceeded" % limit,
                                partial=len(visited))
        words, desc = visited[key]
        st = SimpleState(indices, words)
        marked = st.face_of[st.flag_from_descriptor(desc)]
        marked_descs = st.face_descriptors(marked)
        for t, swaps, corners in st.triangles():
            if t == marked:
                continue
            survivor = next(d for d in marked_descs if d[1] not in corners)
            nw = _swap_words(indices, words, swaps)
            nk = _fast_tag(indices, nw, survivor)
            if nk not in visited:
                visited[nk] = (nw, survivor)
                queue.append(nk)
        done += 1
        if progress and done % progress == 0:
            print("  expanded %d, found %d, frontier %d"
                  % (done, len(visited), len(queue)), flush=True)
    return indices, visited


def _canonical_marked(indices, words, tags, group):
    """Pruned minimum of (words key, tag) over a list of permutations."""
    best_words = None
    best = None
    for sigma in group:
        inv = sigma.inverse()
        cand = []
        worse = False
        for k in indices:
            m = sigma(k)
            w = words[indices.index(abs(m))]
            if m < 0:
                w = w[::-1]
            w = W.min_rotation(tuple(inv(x) for x in w))
            cand.append(w)
            if best_words is not None:
                prefix = tuple(cand)
                if prefix > best_words[:len(cand)]:
                    worse = True
                    break
        if worse:
            continue
        wk = tuple(cand)
        tk = min(transport_descriptor(sigma, d) for d in tags)
        if best is None or (wk, tk) < best:
            best = (wk, tk)
            best_words = wk
    return best


def moebius_census_rows(n, limit=None, progress=None, threads=1):
    """The census row via the fast path (used for the size-4 run).

    Phases: BFS; canonical form under even reorientations plus the
    word-fixing odd identifications (a); reindexings on one representative
    per a-class (b); full group on the b-representatives (c, d).
    """
    indices, visited = moebius_states(n, limit=limit, progress=progress)
    g = _census_groups(indices)

    def tagset(key):
        words, desc = visited[key]
        st = SimpleState(indices, words)
        t = st.face_of[st.flag_from_descriptor(desc)]
        return st.face_descriptors(t)

    if progress:
        print("phase a over %d states" % len(visited), flush=True)
    a_key = {}
    for t, (key, (words, desc)) in enumerate(visited.items()):
        a_key[key] = _canonical_marked(indices, words, tagset(key),
                                       g["evens"])
        if progress and t and t % progress == 0:
            print("  a %d/%d" % (t, len(visited)), flush=True)
    _link_odd_wordfixing(indices, visited, tagset, a_key, g["odd_pure"])
    a_reps = {}
    for key, ak in a_key.items():
        a_reps.setdefault(ak, key)
    a_count = len(a_reps)

    if progress:
        print("phase b over %d representatives" % a_count, flush=True)
    b_key = {}
    rep_states = {key: visited[key] for key in a_reps.values()}
    for t, key in enumerate(rep_states):
        words, desc = visited[key]
        b_key[key] = _canonical_marked(indices, words, tagset(key),
                                       g["perm_evens"])
        if progress and t and t % progress == 0:
            print("  b %d/%d" % (t, a_count), flush=True)
    _link_odd_wordfixing(indices, rep_states, tagset, b_key, g["odd_pure"])
    b_reps = {}
    for key, bk in b_key.items():
        b_reps.setdefault(bk, key)
    b_count = len(b_reps)

    if progress:
        print("phase c/d over %d representatives" % b_count, flush=True)
    c_keys = set()
    d_keys = set()
    for bk, key in b_reps.items():
        words, desc = visited[key]
        c_keys.add(_canonical_marked(indices, words, tagset(key), g["full"]))
        best = None
        for sigma in g["full"]:
            wk = _words_key(act_words(sigma, indices, words))
            if best is None or wk < best:
                best = wk
        d_keys.add(best)
    return {"n": n, "a": a_count, "b": b_count, "c": len(c_keys),
            "d": len(d_keys)}


def _link_odd_wordfixing(indices, visited, tagset, b_keys, odd_pure):
    """Merge b-classes related by word-fixing odd sign changes."""
    uf = _UnionFind(set(b_keys.values()))
    for key, (words, desc) in visited.items():
        wk = key[0]
        for sigma in odd_pure:
            if _words_key(act_words(sigma, indices, words)) != wk:
                continue
            tags = tagset(key)
            nk = (wk, min(transport_descriptor(sigma, d) for d in tags))
            if nk in visited:
                uf.union(b_keys[key], b_keys[nk])
    rep = {bk: uf.find(bk) for bk in set(b_keys.values())}
    for key in b_keys:
        b_keys[key] = rep[b_keys[key]]
