"""Cellular maps between train tracks.

A morphism sends each edge of the source to a non-empty reduced edge path in
the target and every switch to a switch, smoothly: ends on one side of a
switch keep departing on one common side of the image switch, the two sides
of a switch depart on the two distinct sides of the image switch, and the
interior junctions of every edge image cross their switches from side to
side.  This is exactly what lets the image be pulled tight along the track.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from collections.abc import Mapping

from .errors import ChainMismatch, InvalidMorphism, NotASelfMap
from .track import (
    End,
    TrackIso,
    TrainTrack,
    arrival_end,
    departure_end,
    format_end,
    tracks_equal,
)
from .words import Word, format_word, free_reduce, substitute


@dataclass(frozen=True, eq=False)
class TrackMorphism:
    source: TrainTrack
    target: TrainTrack
    images: tuple[tuple[str, Word], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        imgs = self.images
        if isinstance(imgs, Mapping):
            imgs = tuple(sorted((k, tuple(w)) for k, w in imgs.items()))
        else:
            imgs = tuple(sorted((k, tuple(w)) for k, w in imgs))
        object.__setattr__(self, "images", imgs)
        have = [k for k, _ in self.images]
        want = sorted(self.source.edges)
        if have != want:
            raise InvalidMorphism(
                f"images must cover the source edges exactly; got {have}, want {want}"
            )

    @cached_property
    def mapping(self) -> dict[str, Word]:
        return dict(self.images)

    def image_of(self, label: str) -> Word:
        return self.mapping[label]

    def apply_to_word(self, word: Word, reduce: bool = True) -> Word:
        out = substitute(word, self.mapping)
        return free_reduce(out) if reduce else out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrackMorphism):
            return NotImplemented
        return (
            tracks_equal(self.source, other.source)
            and tracks_equal(self.target, other.target)
            and self.images == other.images
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_self_map(self) -> bool:
        return tracks_equal(self.source, self.target)

    @property
    def is_positive(self) -> bool:
        return all(s > 0 for _, w in self.images for _, s in w)

    # ------------------------------------------------------------------

    def _image_direction(self, e: End) -> End:
        """End of the target by which the image path leaves the image switch
        of e.  For i(x) that is the departure end of the first image letter,
        for t(x) the arrival end of the last one."""
        w = self.mapping[e[0]]
        if e[1] == "i":
            return departure_end(w[0])
        return arrival_end(w[-1])

    @cached_property
    def switch_images(self) -> dict[str, str]:
        """Induced switch map; raises InvalidMorphism when ends disagree."""
        out: dict[str, str] = {}
        tsite = self.target.end_site
        for sw in self.source.switches:
            hits = {tsite[self._image_direction(e)][0] for e in sw.ends}
            if len(hits) != 1:
                raise InvalidMorphism(
                    f"ends of switch {sw.name!r} map to different switches: "
                    + ", ".join(sorted(hits))
                )
            out[sw.name] = hits.pop()
        return out

    def check(self) -> None:
        """Full morphism check; raises InvalidMorphism with the reason."""
        tgt_labels = set(self.target.edges)
        tsite = self.target.end_site
        for lab, w in self.images:
            if not w:
                raise InvalidMorphism(f"image of {lab!r} is empty")
            if w != free_reduce(w):
                raise InvalidMorphism(f"image of {lab!r} is not reduced")
            for lt in w:
                if lt[0] not in tgt_labels:
                    raise InvalidMorphism(
                        f"image of {lab!r} uses unknown edge {lt[0]!r}"
                    )
            # path condition and interior smoothness
            for k in range(len(w) - 1):
                arr = arrival_end(w[k])
                dep = departure_end(w[k + 1])
                sa = tsite[arr]
                sd = tsite[dep]
                if sa[0] != sd[0]:
                    raise InvalidMorphism(
                        f"image of {lab!r} breaks between {format_end(arr)} "
                        f"and {format_end(dep)}"
                    )
                if sa[1] == sd[1]:
                    raise InvalidMorphism(
                        f"image of {lab!r} has an illegal (cusped) turn at "
                        f"{format_end(arr)} | {format_end(dep)}"
                    )
        # switch condition and side smoothness
        for sw in self.source.switches:
            vt = self.switch_images[sw.name]  # may raise
            sides_hit = []
            for side in (sw.side_a, sw.side_b):
                hit = {tsite[self._image_direction(e)][1] for e in side}
                if len(hit) != 1:
                    raise InvalidMorphism(
                        f"side of switch {sw.name!r} departs on two sides of {vt!r}"
                    )
                sides_hit.append(hit.pop())
            if sides_hit[0] == sides_hit[1]:
                raise InvalidMorphism(
                    f"both sides of switch {sw.name!r} depart on side "
                    f"{sides_hit[0]} of {vt!r}"
                )

    def is_smooth(self) -> bool:
        try:
            self.check()
            return True
        except InvalidMorphism:
            return False

    def describe(self) -> str:
        rows = [f"{lab} -> {format_word(w)}" for lab, w in self.images]
        head = self.name or "morphism"
        return f"{head}: {self.source.name} -> {self.target.name}; " + "; ".join(rows)


# ----------------------------------------------------------------------


def identity_morphism(track: TrainTrack, name: str = "id") -> TrackMorphism:
    return TrackMorphism(
        track, track, {lab: ((lab, 1),) for lab in track.edges}, name=name
    )


def compose(outer: TrackMorphism, inner: TrackMorphism, name: str | None = None) -> TrackMorphism:
    """outer . inner, defined when inner.target and outer.source agree as
    structures (names are ignored)."""
    if not tracks_equal(inner.target, outer.source):
        raise ChainMismatch(
            f"cannot compose: inner target {inner.target.name!r} does not match "
            f"outer source {outer.source.name!r}"
        )
    images = {
        lab: free_reduce(substitute(w, outer.mapping)) for lab, w in inner.images
    }
    if name is None:
        name = f"{outer.name}.{inner.name}" if outer.name and inner.name else ""
    return TrackMorphism(inner.source, outer.target, images, name=name)


def compose_chain(morphisms) -> TrackMorphism:
    """Compose left to right: compose_chain([f, g, h]) = f . g . h."""
    ms = list(morphisms)
    if not ms:
        raise ChainMismatch("empty chain")
    cur = ms[0]
    for m in ms[1:]:
        cur = compose(cur, m)
    return cur


def power(m: TrackMorphism, k: int) -> TrackMorphism:
    if not m.is_self_map:
        raise NotASelfMap("powers need a self map")
    if k < 0:
        raise InvalidMorphism("negative powers are not defined")
    result = identity_morphism(m.source)
    for _ in range(k):
        result = compose(m, result)
    return result


def relabel_morphism(src: TrainTrack, mapping: dict[str, str],
                     name: str = "") -> TrackMorphism:
    """The tautological morphism src -> src.relabel(mapping)."""
    dst = src.relabel(mapping)
    full = {lab: mapping.get(lab, lab) for lab in src.edges}
    return TrackMorphism(src, dst, {lab: ((full[lab], 1),) for lab in src.edges},
                         name=name)


def iso_morphism(iso: TrackIso, src: TrainTrack, dst: TrainTrack,
                 name: str = "") -> TrackMorphism:
    """A TrackIso (src -> dst) as a single-letter morphism."""
    return TrackMorphism(
        src, dst, {lab: ((iso.labels[lab], 1),) for lab in src.edges}, name=name
    )


def invert_iso(m: TrackMorphism, name: str = "") -> TrackMorphism:
    """Inverse of a bijective single-letter positive morphism."""
    inv: dict[str, Word] = {}
    for lab, w in self_images_ok(m):
        inv[w[0][0]] = ((lab, 1),)
    return TrackMorphism(m.target, m.source, inv, name=name)


def self_images_ok(m: TrackMorphism):
    seen = set()
    for lab, w in m.images:
        if len(w) != 1 or w[0][1] != 1:
            raise InvalidMorphism("not a relabel morphism, cannot invert")
        if w[0][0] in seen:
            raise InvalidMorphism("relabel morphism is not injective")
        seen.add(w[0][0])
    return m.images


def morphism_inverse_words(m: TrackMorphism, word: Word) -> Word:
    """Pull a word back along a bijective single-letter morphism."""
    back = {w[0][0]: lab for lab, w in self_images_ok(m)}
    return tuple((back[lab], s) for lab, s in word)
