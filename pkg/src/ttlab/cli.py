"""Command line front end.

Anywhere a SPEC is expected it may be a file path, "FILE#NAME" to pick one
entry out of a multi-entry file, or "atlas:NAME" for a catalogue entry.

Exit codes: 0 success, 1 semantic failure (invalid track, failed check,
verdict mismatch), 2 usage or input errors (bad syntax, unknown entry,
unreadable file).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import atlas as _atlas
from .boundary import boundary_action
from .certify import certify, render_text, to_json_dict
from .errors import BadIndex, ParseError, TrackError, UnknownEntry
from .fileio import (
    dump_map,
    dump_sequence,
    dump_track,
    resolve_map,
    resolve_sequence,
    resolve_track,
    track_to_dot,
)
from .incidence import dilatation, incidence_matrix
from .morphism import TrackMorphism, compose_chain
from .search import SearchConfig, search_loops
from .splitting import apply_sequence, format_sequence, legal_splits
from .track import TrainTrack, format_end
from .words import format_word


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _track_dict(t: TrainTrack) -> dict:
    return {
        "name": t.name,
        "edges": list(t.edges),
        "switches": [
            {
                "name": sw.name,
                "sideA": [format_end(e) for e in sw.side_a],
                "sideB": [format_end(e) for e in sw.side_b],
            }
            for sw in t.switches
        ],
    }


def _euler_dict(t: TrainTrack) -> dict:
    d = t.euler
    return {
        "switches": d.n_switches,
        "edges": d.n_edges,
        "chi": d.chi,
        "boundaries": d.n_boundaries,
        "genus": d.genus,
        "totalBoundaryLength": d.total_boundary_length,
        "cuspCounts": list(d.cusp_counts),
        "coherentlyOrientable": d.coherently_orientable,
    }


# ----------------------------------------------------------------------
# track commands


def cmd_track_validate(args) -> int:
    t = resolve_track(args.spec)
    data = t.validate()
    if args.json:
        _emit_json({"ok": True, "name": t.name, **_euler_dict(t)}, args.out)
    else:
        _emit(
            f"ok: {t.name} is a valid track "
            f"({data.n_edges} edges, {data.n_switches} switches, "
            f"chi = {data.chi}, genus = {data.genus}, "
            f"{data.n_boundaries} boundary curves)",
            args.out,
        )
    return 0


def cmd_track_info(args) -> int:
    t = resolve_track(args.spec)
    data = t.validate()
    moves = legal_splits(t)
    if args.json:
        payload = _track_dict(t)
        payload.update(_euler_dict(t))
        payload["legalSplits"] = [str(m) for m in moves]
        payload["sideProfile"] = list(t.side_profile)
        _emit_json(payload, args.out)
        return 0
    lines = [
        f"track {t.name}: {data.n_edges} edges, {data.n_switches} switches",
        f"chi = {data.chi}, boundary curves = {data.n_boundaries}, "
        f"genus = {data.genus}",
        "cusps per curve: " + " ".join(str(c) for c in data.cusp_counts),
        f"coherently orientable: {'yes' if data.coherently_orientable else 'no'}",
        f"legal splits: {len(moves)}",
    ]
    _emit("\n".join(lines), args.out)
    return 0


def cmd_track_boundaries(args) -> int:
    t = resolve_track(args.spec)
    curves = t.boundary_curves
    if args.json:
        payload = [
            {
                "word": format_word(c.word),
                "cusps": list(c.cusps),
                "sides": [format_word(s) for s in c.sides],
            }
            for c in curves
        ]
        _emit_json(payload, args.out)
        return 0
    lines = []
    for idx, c in enumerate(curves):
        lines.append(f"curve {idx}: {format_word(c.word)}")
        lines.append(f"  cusps at {' '.join(str(p) for p in c.cusps)}"
                     f" ({c.n_cusps} total)")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_track_export_dot(args) -> int:
    t = resolve_track(args.spec)
    _emit(track_to_dot(t), args.out)
    return 0


def cmd_track_export(args) -> int:
    t = resolve_track(args.spec)
    _emit(dump_track(t), args.out)
    return 0


# ----------------------------------------------------------------------
# map commands


def cmd_map_check(args) -> int:
    m = resolve_map(args.spec)
    m.check()
    if args.json:
        _emit_json(
            {"ok": True, "name": m.name, "source": m.source.name,
             "target": m.target.name, "selfMap": m.is_self_map},
            args.out,
        )
    else:
        _emit(f"ok: {m.name or 'map'} is cellular and smooth "
              f"({m.source.name} -> {m.target.name})", args.out)
    return 0


def cmd_map_certify(args) -> int:
    m = resolve_map(args.spec)
    cert = certify(m, tol=args.tol)
    if args.json:
        _emit_json(to_json_dict(cert), args.out)
    else:
        _emit(render_text(cert), args.out)
    if args.expect and cert.verdict != args.expect:
        print(f"expected verdict {args.expect!r}, got {cert.verdict!r}",
              file=sys.stderr)
        return 1
    return 0


def cmd_map_dilatation(args) -> int:
    m = resolve_map(args.spec)
    mat = incidence_matrix(m)
    perron = dilatation(mat, tol=args.tol)
    if args.json:
        _emit_json(
            {
                "value": perron.value,
                "lower": str(perron.lower),
                "upper": str(perron.upper),
                "iterations": perron.iterations,
                "weights": dict(zip(mat.rows, perron.weights)),
            },
            args.out,
        )
    else:
        _emit(
            f"dilatation = {perron.value:.12f}\n"
            f"certified bracket [{perron.lower}, {perron.upper}] "
            f"(width {float(perron.width):.3e}, "
            f"{perron.iterations} iterations)",
            args.out,
        )
    return 0


def cmd_map_compose(args) -> int:
    ms = [resolve_map(s) for s in args.specs]
    comp = compose_chain(ms)
    _emit(dump_map(comp, name=args.name or comp.name or "composite"), args.out)
    return 0


def cmd_map_boundaries(args) -> int:
    m = resolve_map(args.spec)
    action = boundary_action(m)
    if args.json:
        payload = {
            "curves": [
                {
                    "source": ci.source_index,
                    "target": ci.target_index,
                    "rotation": ci.rotation,
                    "cuspShift": ci.cusp_shift,
                    "foldDepths": list(ci.fold_depths),
                }
                for ci in action.curves
            ],
            "warnings": list(action.warnings),
        }
        _emit_json(payload, args.out)
        return 0
    lines = []
    for ci in action.curves:
        lines.append(
            f"curve {ci.source_index} -> curve {ci.target_index}, "
            f"rotation {ci.rotation}, cusp shift {ci.cusp_shift}"
        )
    for w in action.warnings:
        lines.append(f"warning: {w}")
    _emit("\n".join(lines), args.out)
    return 0


# ----------------------------------------------------------------------
# sequence commands


def cmd_seq_parse(args) -> int:
    moves = resolve_sequence(args.spec)
    if args.json:
        _emit_json([str(m) for m in moves], args.out)
    else:
        _emit(f"{len(moves)} moves: {format_sequence(moves)}", args.out)
    return 0


def cmd_seq_apply(args) -> int:
    t = resolve_track(args.track)
    moves = resolve_sequence(args.spec)
    run = apply_sequence(t, moves)
    start = t.renamed("start")
    final = run.final.renamed("final")
    comp = TrackMorphism(final, start, run.morphism.images, name="composite")
    if args.json:
        _emit_json(
            {
                "moves": len(moves),
                "final": _track_dict(final),
                "composite": {lab: format_word(w) for lab, w in comp.images},
            },
            args.out,
        )
        return 0
    text = dump_track(start) + "\n" + dump_track(final) + "\n" + dump_map(comp)
    _emit(text, args.out)
    return 0


# ----------------------------------------------------------------------
# atlas commands


def cmd_atlas_list(args) -> int:
    names = _atlas.atlas_names()
    if args.json:
        _emit_json({n: _atlas.describe(n) for n in names}, args.out)
        return 0
    width = max(len(n) for n in names)
    _emit("\n".join(f"{n:<{width}}  {_atlas.describe(n)}" for n in names),
          args.out)
    return 0


def _export_entry(entry, name: str, args) -> int:
    if isinstance(entry, TrainTrack):
        _emit(dump_track(entry), args.out)
    elif isinstance(entry, TrackMorphism):
        if args.json:
            _emit_json(
                {"name": entry.name, "source": entry.source.name,
                 "target": entry.target.name,
                 "images": {lab: format_word(w) for lab, w in entry.images}},
                args.out,
            )
            return 0
        parts = [dump_track(entry.source)]
        if entry.target.name != entry.source.name:
            parts.append(dump_track(entry.target))
        parts.append(dump_map(entry))
        _emit("\n".join(parts), args.out)
    elif isinstance(entry, dict):
        _emit("\n".join(f"{k} -> {v}" for k, v in sorted(entry.items())),
              args.out)
    elif entry and isinstance(entry[0], tuple) and len(entry[0]) == 2 \
            and isinstance(entry[0][0], str):
        _emit(format_word(entry), args.out)  # a boundary word
    else:
        _emit(dump_sequence(entry, name=name), args.out)
    return 0


def cmd_atlas_export(args) -> int:
    return _export_entry(_atlas.atlas(args.name), args.name.replace(":", "_"),
                         args)


def cmd_atlas_phi(args) -> int:
    return _export_entry(_atlas.phi(args.n), f"phi_{args.n}", args)


def cmd_atlas_psi(args) -> int:
    return _export_entry(_atlas.psi(args.n), f"psi_{args.n}", args)


def cmd_atlas_reconstruct(args) -> int:
    rebuilt = _atlas.reconstruct_base_track()
    stored = _atlas.base_track()
    same = rebuilt.canonical_key == stored.canonical_key
    if args.json:
        _emit_json({"matches": same, "track": _track_dict(rebuilt)}, args.out)
    else:
        verdict = "matches" if same else "DIFFERS FROM"
        _emit(f"reconstruction {verdict} the stored base track", args.out)
    return 0 if same else 1


# ----------------------------------------------------------------------
# search


def cmd_search_loops(args) -> int:
    t = resolve_track(args.spec)
    cfg = SearchConfig(
        max_depth=args.depth,
        fanout=args.fanout,
        certify=not args.no_certify,
        tolerance=args.tol,
        max_nodes=args.max_nodes,
        require_fixed_point_free=args.fpf,
        require_irreducible=args.irreducible,
    )
    results = search_loops(t, cfg)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for idx, r in enumerate(results, start=1):
            stem = f"loop-{idx:03d}"
            parts = [dump_sequence(r.sequence, name=stem),
                     dump_track(r.final.renamed("final"))]
            for j, sm in enumerate(r.self_maps, start=1):
                parts.append(dump_map(sm, name=f"{stem}-self-{j}",
                                      source_ref="final",
                                      target_ref="final"))
            with open(os.path.join(args.out, stem + ".tt"), "w",
                      encoding="utf-8") as fh:
                fh.write("\n".join(parts))
    if args.json:
        payload = []
        for r in results:
            entry = {
                "sequence": [str(m) for m in r.sequence],
                "depth": r.depth,
                "identifications": [dict(i.labels) for i in r.identifications],
                "selfMaps": [
                    {lab: format_word(w) for lab, w in sm.images}
                    for sm in r.self_maps
                ],
            }
            if r.certificates:
                entry["verdicts"] = [c.verdict for c in r.certificates]
            payload.append(entry)
        _emit_json(payload, None)
        return 0
    lines = [f"found {len(results)} loop(s) from {t.name} "
             f"at depth <= {args.depth}"]
    for idx, r in enumerate(results, start=1):
        bits = f"loop {idx}: {r.notation}  [depth {r.depth}, " \
               f"{len(r.identifications)} identification(s)"
        if r.certificates:
            bits += ", verdicts: " + ", ".join(c.verdict for c in r.certificates)
        lines.append(bits + "]")
    if args.out:
        lines.append(f"wrote {len(results)} file(s) under {args.out}")
    _emit("\n".join(lines), None)
    return 0


# ----------------------------------------------------------------------
# parser


def _add_common(p, tol=False, expect=False):
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--out", metavar="FILE", help="write output to FILE")
    if tol:
        p.add_argument("--tol", type=float, default=1e-10,
                       help="certified bracket width (default 1e-10)")
    if expect:
        p.add_argument("--expect", choices=["pA", "reducible", "inconclusive"],
                       help="exit 1 unless the verdict matches")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttlab",
        description="train track calculus: tracks, splittings, certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    track = sub.add_parser("track", help="inspect and validate tracks")
    tsub = track.add_subparsers(dest="subcommand", required=True)
    for name, fn, extra in (
        ("validate", cmd_track_validate, {}),
        ("info", cmd_track_info, {}),
        ("boundaries", cmd_track_boundaries, {}),
        ("export", cmd_track_export, {}),
        ("export-dot", cmd_track_export_dot, {}),
    ):
        p = tsub.add_parser(name)
        p.add_argument("spec", help="track file, FILE#NAME, or atlas:NAME")
        _add_common(p, **extra)
        p.set_defaults(func=fn)

    mp = sub.add_parser("map", help="check, certify, and compose maps")
    msub = mp.add_subparsers(dest="subcommand", required=True)
    p = msub.add_parser("check")
    p.add_argument("spec", help="map file, FILE#NAME, or atlas:NAME")
    _add_common(p)
    p.set_defaults(func=cmd_map_check)
    p = msub.add_parser("certify")
    p.add_argument("spec")
    _add_common(p, tol=True, expect=True)
    p.set_defaults(func=cmd_map_certify)
    p = msub.add_parser("dilatation")
    p.add_argument("spec")
    _add_common(p, tol=True)
    p.set_defaults(func=cmd_map_dilatation)
    p = msub.add_parser("boundaries")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(func=cmd_map_boundaries)
    p = msub.add_parser("compose")
    p.add_argument("specs", nargs="+", help="maps, outermost first")
    p.add_argument("--name", help="name for the composite")
    _add_common(p)
    p.set_defaults(func=cmd_map_compose)

    seq = sub.add_parser("seq", help="parse and apply splitting sequences")
    ssub = seq.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("parse")
    p.add_argument("spec", help="sequence file, FILE#NAME, or atlas:NAME")
    _add_common(p)
    p.set_defaults(func=cmd_seq_parse)
    p = ssub.add_parser("apply")
    p.add_argument("track", help="starting track")
    p.add_argument("spec", help="sequence to apply")
    _add_common(p)
    p.set_defaults(func=cmd_seq_apply)

    at = sub.add_parser("atlas", help="built-in catalogue")
    asub = at.add_subparsers(dest="subcommand", required=True)
    p = asub.add_parser("list")
    _add_common(p)
    p.set_defaults(func=cmd_atlas_list)
    p = asub.add_parser("export")
    p.add_argument("name", help="catalogue entry, e.g. tau or phi:5")
    _add_common(p)
    p.set_defaults(func=cmd_atlas_export)
    p = asub.add_parser("phi")
    p.add_argument("--n", type=int, required=True, help="odd map index")
    _add_common(p)
    p.set_defaults(func=cmd_atlas_phi)
    p = asub.add_parser("psi")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_atlas_psi)
    p = asub.add_parser("reconstruct")
    _add_common(p)
    p.set_defaults(func=cmd_atlas_reconstruct)

    se = sub.add_parser("search", help="enumerate splitting loops")
    sesub = se.add_subparsers(dest="subcommand", required=True)
    p = sesub.add_parser("loops")
    p.add_argument("spec", help="seed track")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--fanout", type=int, default=1,
                   help="parallel first-level branches")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--no-certify", action="store_true",
                   help="skip certifying the loop self maps")
    p.add_argument("--fpf", action="store_true",
                   help="emit only fixed point free closures")
    p.add_argument("--irreducible", action="store_true",
                   help="emit only closures with irreducible matrix")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--out", metavar="DIR",
                   help="write one result file per loop under DIR")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="certified bracket width (default 1e-10)")
    p.set_defaults(func=cmd_search_loops)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownEntry, BadIndex, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except TrackError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
