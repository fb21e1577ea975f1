"""Embedded train tracks as labelled ribbon graphs.

A track is a finite graph whose edge ends are grouped around switches.  The
ends at a switch come in two ordered, non-empty sides; the cyclic (ribbon)
order around the switch is side A followed by side B reversed.  The pair
(A, B) and the pair (reversed B, reversed A) present the same switch.

Ends are written t(x) and i(x) for the terminal and initial end of edge x.
Boundary curves of the fibered neighborhood are traced by the successor map
F = sigma . alpha, where alpha flips an end to the opposite end of its edge
and sigma is the ribbon successor.  A junction of the trace is a cusp
exactly when the arriving and the departing end lie on the same side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InconsistentConstraints, InvalidTrack, NotOrientable, ParseError
from .words import Letter, Word, is_label, min_rotation, word_key

End = tuple[str, str]  # (edge label, "i" or "t")


def end(label: str, kind: str) -> End:
    return (label, kind)


def flip_end(e: End) -> End:
    return (e[0], "t" if e[1] == "i" else "i")


def format_end(e: End) -> str:
    return f"{e[1]}({e[0]})"


def parse_end(token: str, line: int | None = None, col: int | None = None) -> End:
    token = token.strip()
    if len(token) >= 4 and token[0] in "it" and token[1] == "(" and token.endswith(")"):
        label = token[2:-1]
        if is_label(label):
            return (label, token[0])
    raise ParseError(f"bad end token {token!r}, expected t(x) or i(x)", line, col)


# letter traversal: (x, +1) runs from i(x) to t(x)

def departure_end(lt: Letter) -> End:
    lab, s = lt
    return (lab, "i" if s > 0 else "t")


def arrival_end(lt: Letter) -> End:
    lab, s = lt
    return (lab, "t" if s > 0 else "i")


def letter_from_departure(e: End) -> Letter:
    return (e[0], 1 if e[1] == "i" else -1)


@dataclass(frozen=True)
class Switch:
    name: str
    side_a: tuple[End, ...]
    side_b: tuple[End, ...]

    @property
    def ends(self) -> tuple[End, ...]:
        return self.side_a + self.side_b

    @property
    def ribbon(self) -> tuple[End, ...]:
        # cyclic order around the switch
        return self.side_a + tuple(reversed(self.side_b))

    @property
    def valence(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def presentations(self) -> tuple[tuple, tuple]:
        p1 = (self.side_a, self.side_b)
        p2 = (tuple(reversed(self.side_b)), tuple(reversed(self.side_a)))
        return p1, p2

    def canonical_presentation(self) -> tuple:
        return min(self.presentations())


@dataclass(frozen=True)
class BoundaryCurve:
    """One boundary circle of the fibered neighborhood, in canonical rotation.

    `cusps` holds junction indices: junction j sits just before letter j.
    When the curve has cusps, junction 0 is one of them.
    """

    word: Word
    cusps: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)

    @property
    def sides(self) -> tuple[Word, ...]:
        """Arcs between consecutive cusps, in cusp order."""
        if not self.cusps:
            return (self.word,)
        out = []
        k = len(self.cusps)
        for m in range(k):
            a = self.cusps[m]
            b = self.cusps[(m + 1) % k]
            if b <= a:
                out.append(self.word[a:] + self.word[:b])
            else:
                out.append(self.word[a:b])
        return tuple(out)

    @property
    def n_cusps(self) -> int:
        return len(self.cusps)


@dataclass(frozen=True)
class EulerData:
    n_switches: int
    n_edges: int
    chi: int
    n_boundaries: int
    genus: int
    total_boundary_length: int
    cusp_counts: tuple[int, ...]
    coherently_orientable: bool

    @property
    def total_cusps(self) -> int:
        return sum(self.cusp_counts)


@dataclass(frozen=True)
class TrainTrack:
    name: str
    edges: tuple[str, ...]
    switches: tuple[Switch, ...]
    # optional declared boundary words, kept verbatim from input files
    declared_boundaries: tuple[tuple[str, Word], ...] = field(default=())

    def __post_init__(self):
        seen_sw = set()
        for sw in self.switches:
            if sw.name in seen_sw:
                raise InvalidTrack(f"duplicate switch name {sw.name!r}")
            seen_sw.add(sw.name)
            if not sw.side_a or not sw.side_b:
                raise InvalidTrack(f"switch {sw.name!r} has an empty side")
        labels = list(self.edges)
        if len(set(labels)) != len(labels):
            raise InvalidTrack("duplicate edge labels")
        for lab in labels:
            if not is_label(lab):
                raise InvalidTrack(f"bad edge label {lab!r}")
        placed: dict[End, str] = {}
        for sw in self.switches:
            for e in sw.ends:
                if e in placed:
                    raise InvalidTrack(f"end {format_end(e)} placed twice")
                placed[e] = sw.name
        want = {(lab, k) for lab in labels for k in ("i", "t")}
        if set(placed) != want:
            missing = sorted(want - set(placed))
            extra = sorted(set(placed) - want)
            bits = []
            if missing:
                bits.append("missing " + ", ".join(format_end(e) for e in missing))
            if extra:
                bits.append("stray " + ", ".join(format_end(e) for e in extra))
            raise InvalidTrack("ends do not match edge list: " + "; ".join(bits))

    # ------------------------------------------------------------------
    # lookups (cached_property writes to __dict__, fine on frozen classes)

    @cached_property
    def switch_by_name(self) -> dict[str, Switch]:
        return {sw.name: sw for sw in self.switches}

    @cached_property
    def end_site(self) -> dict[End, tuple[str, str, int]]:
        """end -> (switch name, side letter, index within the side)."""
        site: dict[End, tuple[str, str, int]] = {}
        for sw in self.switches:
            for i, e in enumerate(sw.side_a):
                site[e] = (sw.name, "A", i)
            for i, e in enumerate(sw.side_b):
                site[e] = (sw.name, "B", i)
        return site

    @cached_property
    def sigma(self) -> dict[End, End]:
        """Ribbon successor around each switch."""
        succ: dict[End, End] = {}
        for sw in self.switches:
            cyc = sw.ribbon
            n = len(cyc)
            for i, e in enumerate(cyc):
                succ[e] = cyc[(i + 1) % n]
        return succ

    @cached_property
    def side_profile(self) -> tuple[int, ...]:
        """Sorted multiset of side sizes; cheap isomorphism prefilter."""
        sizes = []
        for sw in self.switches:
            sizes.append(len(sw.side_a))
            sizes.append(len(sw.side_b))
        return tuple(sorted(sizes))

    def switch_of(self, e: End) -> str:
        return self.end_site[e][0]

    def side_of(self, e: End) -> str:
        return self.end_site[e][1]

    # ------------------------------------------------------------------
    # boundary tracing

    @cached_property
    def boundary_curves(self) -> tuple[BoundaryCurve, ...]:
        site = self.end_site
        sigma = self.sigma
        darts = set(site)  # every end once, as a departure
        curves = []
        while darts:
            start = min(darts)
            seq = []
            d = start
            while True:
                seq.append(d)
                darts.discard(d)
                d = sigma[flip_end(d)]
                if d == start:
                    break
            word = tuple(letter_from_departure(e) for e in seq)
            n = len(seq)
            cusps = []
            for j in range(n):
                arr = flip_end(seq[j - 1])
                dep = seq[j]
                if site[arr][0] != site[dep][0]:
                    raise InvalidTrack("boundary trace left the switch")
                if site[arr][1] == site[dep][1]:
                    cusps.append(j)
            word, r = min_rotation(word, starts=cusps or None)
            cusps = tuple(sorted((c - r) % n for c in cusps))
            curves.append(BoundaryCurve(word, cusps))
        curves.sort(key=lambda c: word_key(c.word))
        return tuple(curves)

    @cached_property
    def euler(self) -> EulerData:
        v = len(self.switches)
        e = len(self.edges)
        chi = v - e
        curves = self.boundary_curves
        b = len(curves)
        if (2 - b - chi) % 2 != 0:
            raise InvalidTrack("non-integral genus")
        genus = (2 - b - chi) // 2
        try:
            self.orientation()
            orientable = True
        except NotOrientable:
            orientable = False
        return EulerData(
            n_switches=v,
            n_edges=e,
            chi=chi,
            n_boundaries=b,
            genus=genus,
            total_boundary_length=sum(len(c) for c in curves),
            cusp_counts=tuple(c.n_cusps for c in curves),
            coherently_orientable=orientable,
        )

    def validate(self) -> EulerData:
        """Full consistency battery; __post_init__ already did the basics."""
        data = self.euler
        if data.total_boundary_length != 2 * data.n_edges:
            raise InvalidTrack("boundary length must be twice the edge count")
        switch_cusps = sum(
            (len(sw.side_a) - 1) + (len(sw.side_b) - 1) for sw in self.switches
        )
        if switch_cusps != data.total_cusps:
            raise InvalidTrack(
                f"cusp conservation fails: sides give {switch_cusps}, "
                f"boundary gives {data.total_cusps}"
            )
        return data

    # ------------------------------------------------------------------

    def orientation(self) -> dict[str, int]:
        """Coherent edge orientation (+1 means the edge flows i -> t).

        At every switch one whole side must arrive and the other depart.
        Parity propagation over the edges; raises NotOrientable (with an
        edge-set witness) when the constraints close an odd cycle.
        """
        # parity(end) = 0 for t(x), 1 for i(x); within a side the value
        # parity(end) + o(label) is constant, across sides it flips.
        color: dict[str, int] = {}
        comp: dict[str, int] = {}

        def assign(label: str, val: int, cid: int, trail: list[str]):
            stack = [(label, val)]
            while stack:
                lab, v = stack.pop()
                if lab in color:
                    if color[lab] != v:
                        raise NotOrientable(
                            "no coherent orientation", cycle=sorted(set(trail + [lab]))
                        )
                    continue
                color[lab] = v
                comp[lab] = cid
                trail.append(lab)
                for sw in self.switches:
                    for side_idx, side in ((0, sw.side_a), (1, sw.side_b)):
                        hit = [e for e in side if e[0] == lab]
                        if not hit:
                            continue
                        base = next(e for e in hit)
                        pb = 0 if base[1] == "t" else 1
                        sv = (pb + v) % 2 ^ side_idx
                        for other_side_idx, other in ((0, sw.side_a), (1, sw.side_b)):
                            want = sv ^ other_side_idx
                            for e2 in other:
                                p2 = 0 if e2[1] == "t" else 1
                                stack.append((e2[0], (want - p2) % 2))

        cid = 0
        for lab in sorted(self.edges):
            if lab not in color:
                assign(lab, 0, cid, [])
                cid += 1
        return {lab: (1 if c == 0 else -1) for lab, c in color.items()}

    # ------------------------------------------------------------------

    @cached_property
    def canonical_key(self) -> tuple:
        """Structure key: labels plus switch presentations, names ignored."""
        reps = sorted(sw.canonical_presentation() for sw in self.switches)
        return (tuple(sorted(self.edges)), tuple(reps))

    def relabel(self, mapping: dict[str, str], name: str | None = None) -> "TrainTrack":
        """Rename edges; identity outside `mapping`.  Switch names persist."""
        full = {lab: mapping.get(lab, lab) for lab in self.edges}
        if len(set(full.values())) != len(full):
            raise InvalidTrack("relabel map is not injective")

        def m_end(e: End) -> End:
            return (full[e[0]], e[1])

        switches = tuple(
            Switch(sw.name, tuple(m_end(e) for e in sw.side_a), tuple(m_end(e) for e in sw.side_b))
            for sw in self.switches
        )
        bounds = tuple(
            (bn, tuple((full[lab], s) for lab, s in w)) for bn, w in self.declared_boundaries
        )
        return TrainTrack(
            name if name is not None else self.name,
            tuple(full[lab] for lab in self.edges),
            switches,
            bounds,
        )

    def renamed(self, name: str) -> "TrainTrack":
        return TrainTrack(name, self.edges, self.switches, self.declared_boundaries)


def tracks_equal(a: TrainTrack, b: TrainTrack) -> bool:
    """Same labels and same switch structure; names and presentation choices
    do not matter."""
    return a.canonical_key == b.canonical_key


# ----------------------------------------------------------------------
# isomorphisms


@dataclass(frozen=True)
class TrackIso:
    """Flip-free isomorphism: ends map kind-preservingly, (x,k) -> (f(x),k).

    Edge-direction-reversing symmetries are deliberately out of scope.
    `mirrored` records whether side orders were reversed (a reflection).
    """

    label_map: tuple[tuple[str, str], ...]
    switch_map: tuple[tuple[str, str], ...]
    mirrored: bool
    mode: str

    @cached_property
    def labels(self) -> dict[str, str]:
        return dict(self.label_map)

    @cached_property
    def switches(self) -> dict[str, str]:
        return dict(self.switch_map)

    def apply_label(self, lab: str) -> str:
        return self.labels[lab]


def _switch_alignments(sv: Switch, dv: Switch, flavor: str):
    """Candidate end pairings of sv onto dv.

    straight: A onto a component in order, mirror: reversed.  Both switch
    presentations of dv are tried.  Pairings that would flip an end kind
    are dropped (flip-free semantics).
    """
    la, lb = len(sv.side_a), len(sv.side_b)
    cands = []
    for pa, pb in dv.presentations():
        if flavor == "straight":
            pair = (pa, pb)
        else:
            pair = (tuple(reversed(pa)), tuple(reversed(pb)))
        if len(pair[0]) != la or len(pair[1]) != lb:
            continue
        pairs = list(zip(sv.side_a, pair[0])) + list(zip(sv.side_b, pair[1]))
        if all(se[1] == de[1] for se, de in pairs):
            cands.append(pairs)
    return cands


def isomorphisms(
    src: TrainTrack,
    dst: TrainTrack,
    mode: str = "embedded",
    include_mirror: bool = True,
) -> tuple[TrackIso, ...]:
    """All flip-free isomorphisms src -> dst.

    embedded: reflections are a single global choice (the surface is either
    reflected or it is not).  abstract: each switch may reflect on its own.
    """
    if mode not in ("embedded", "abstract"):
        raise InconsistentConstraints(f"unknown isomorphism mode {mode!r}")
    if len(src.edges) != len(dst.edges) or len(src.switches) != len(dst.switches):
        return ()
    if src.side_profile != dst.side_profile:
        return ()

    s_sw = sorted(src.switches, key=lambda sw: (-sw.valence, sw.name))
    d_all = list(dst.switches)
    found: list[TrackIso] = []
    seen: set[tuple] = set()

    def run(flavors: tuple[str, ...], global_flavor: str | None):
        def rec(i: int, used: set[str], lmap: dict[str, str], smap: dict[str, str],
                mirrored_any: bool):
            if i == len(s_sw):
                key = tuple(sorted(lmap.items()))
                if key not in seen:
                    seen.add(key)
                    found.append(
                        TrackIso(
                            tuple(sorted(lmap.items())),
                            tuple(sorted(smap.items())),
                            mirrored_any,
                            mode,
                        )
                    )
                return
            sv = s_sw[i]
            for dv in d_all:
                if dv.name in used:
                    continue
                for flavor in flavors:
                    for pairs in _switch_alignments(sv, dv, flavor):
                        add: dict[str, str] = {}
                        ok = True
                        for se, de in pairs:
                            cur = lmap.get(se[0], add.get(se[0]))
                            if cur is None:
                                if de[0] in lmap.values() or de[0] in add.values():
                                    ok = False
                                    break
                                add[se[0]] = de[0]
                            elif cur != de[0]:
                                ok = False
                                break
                        if not ok:
                            continue
                        lmap2 = dict(lmap)
                        lmap2.update(add)
                        smap2 = dict(smap)
                        smap2[sv.name] = dv.name
                        rec(i + 1, used | {dv.name}, lmap2, smap2,
                            mirrored_any or flavor == "mirror")

        rec(0, set(), {}, {}, global_flavor == "mirror")

    if mode == "embedded":
        run(("straight",), "straight")
        if include_mirror:
            run(("mirror",), "mirror")
    else:
        flavors = ("straight", "mirror") if include_mirror else ("straight",)
        run(flavors, None)

    # embedded mirrored flag: a pure mirror pass marks every iso mirrored,
    # but an iso found in both passes is straight; the straight pass ran
    # first and `seen` already filtered the duplicate.
    found.sort(key=lambda iso: (iso.mirrored, iso.label_map))
    return tuple(found)


def automorphisms(track: TrainTrack, mode: str = "embedded",
                  include_mirror: bool = True) -> tuple[TrackIso, ...]:
    return isomorphisms(track, track, mode=mode, include_mirror=include_mirror)
