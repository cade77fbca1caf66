"""Command-line interface.

Subcommands cover the full workflow: ``evaluate`` scores one candidate map
against ground truth, ``bench`` runs detectors x measures over an image
(optionally correlating against opinion scores), ``stimuli`` and
``jnd-analyze`` generate and analyze forced-choice sessions, and ``synth``
writes synthetic scenes with exact ground truth.

Machine-readable JSON goes to stdout by default; ``--pretty`` switches to
human-readable tables.  Exit codes are stable: 0 success, 1 runtime or
data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from pathlib import Path

from . import detectors, measures, psychometrics, synthetic
from .raster import edge_map_from_image, image_from_edge_map, load_pgm, save_pgm
from .matching import MatchConfig

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load_edge_map(path: str):
    data = Path(path).read_bytes()
    return edge_map_from_image(load_pgm(data)), _sha256(data)


def _measure_params(args) -> measures.MeasureParams:
    return measures.MeasureParams(
        alpha=args.alpha, match=MatchConfig(jnd=args.jnd, max_depth=args.max_depth)
    )


def _emit(doc: dict, pretty_lines=None, pretty: bool = False) -> None:
    if pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    else:
        print(json.dumps(doc, sort_keys=True))


def cmd_evaluate(args) -> int:
    gt, _ = _load_edge_map(args.gt)
    dc, _ = _load_edge_map(args.candidate)
    params = _measure_params(args)
    score = measures.get_measure(args.measure)(gt, dc, params)
    doc = {
        "measure": args.measure,
        "value": score.value,
        "breakdown": score.breakdown,
        "params": {"alpha": args.alpha, "jnd": args.jnd, "max_depth": args.max_depth},
    }
    lines = [f"measure     {args.measure}", f"value       {score.value:.6f}"]
    for key in sorted(score.breakdown):
        lines.append(f"{key:<12}{score.breakdown[key]}")
    _emit(doc, lines, args.pretty)
    return EXIT_OK


def _detector_configs(names, config_path):
    overrides = {}
    if config_path:
        overrides = json.loads(Path(config_path).read_text())
        if not isinstance(overrides, dict):
            raise ValueError("detector config must be a JSON object keyed by detector name")
    configs = {}
    for name in names:
        fields = dict(overrides.get(name, {}))
        configs[name] = detectors.DetectorConfig(kind=name, **fields)
    return configs


def cmd_bench(args) -> int:
    image_bytes = Path(args.image).read_bytes()
    image = load_pgm(image_bytes)
    gt, gt_hash = _load_edge_map(args.gt)
    params = _measure_params(args)
    configs = _detector_configs(args.detectors, args.config)

    scores = {}
    for name in args.detectors:
        emap = detectors.detect(image, configs[name])
        scores[name] = {
            m: measures.get_measure(m)(gt, emap, params).value for m in args.measures
        }

    doc = {
        "scores": scores,
        "provenance": {
            "image_sha256": _sha256(image_bytes),
            "gt_sha256": gt_hash,
            "detectors": {
                name: dataclasses.asdict(cfg) for name, cfg in configs.items()
            },
            "measure_params": {
                "alpha": args.alpha, "jnd": args.jnd, "max_depth": args.max_depth
            },
        },
    }

    if args.mos:
        mos_text = Path(args.mos).read_text()
        table = measures.MosTable.from_csv(mos_text)
        mos_norm = {}
        for name in args.detectors:
            try:
                mos_norm[name] = measures.normalize_mos(table.for_id(name))
            except ValueError:
                raise ValueError(f"missing MOS row for detector '{name}'")
        order = sorted(args.detectors)
        ys = [mos_norm[n] for n in order]
        doc["mos"] = {"normalized": mos_norm, "sha256": _sha256(mos_text.encode())}
        doc["correlations"] = {}
        for m in args.measures:
            xs = [scores[n][m] for n in order]
            doc["correlations"][m] = {
                "pearson": measures.pearson(xs, ys),
                "spearman": measures.spearman(xs, ys),
            }

    if args.csv:
        rows = ["detector,measure,value"]
        for name in sorted(scores):
            for m in sorted(scores[name]):
                rows.append(f"{name},{m},{scores[name][m]!r}")
        Path(args.csv).write_text("\n".join(rows) + "\n")

    lines = ["detector    " + "  ".join(f"{m:>8}" for m in args.measures)]
    for name in args.detectors:
        lines.append(
            f"{name:<12}" + "  ".join(f"{scores[name][m]:8.4f}" for m in args.measures)
        )
    if "correlations" in doc:
        lines.append("")
        for m, c in sorted(doc["correlations"].items()):
            lines.append(f"{m}: pearson {c['pearson']:+.4f}  spearman {c['spearman']:+.4f}")
    _emit(doc, lines, args.pretty)
    return EXIT_OK


def cmd_stimuli(args) -> int:
    schedule = psychometrics.build_schedule(args.trials_per_condition, args.seed)
    Path(args.out).write_text(psychometrics.schedule_to_json(schedule))
    doc = {
        "trials": len(schedule),
        "conditions": len(psychometrics.COMPARISON_DISTANCES) * len(psychometrics.SIDES),
        "trials_per_condition": args.trials_per_condition,
        "seed": args.seed,
        "path": args.out,
    }
    _emit(doc, [f"{k}: {v}" for k, v in doc.items()], args.pretty)
    return EXIT_OK


def cmd_jnd_analyze(args) -> int:
    schedule = psychometrics.schedule_from_json(Path(args.schedule).read_text())
    records = psychometrics.responses_from_jsonl(Path(args.responses).read_text())
    curve = psychometrics.analyze(schedule, records)
    cleaned = psychometrics.isotonic_proportions(curve)
    estimate = psychometrics.estimate_jnd(curve)
    doc = {
        "curve": [
            {
                "distance": p.distance,
                "n": p.n_trials,
                "chose_comparison": p.chose_comparison,
                "proportion": p.proportion,
            }
            for p in curve.points
        ],
        "isotonic": cleaned,
        "by_side": {
            s: {str(d): {"chose_comparison": c, "n": n} for d, (c, n) in tallies.items()}
            for s, tallies in curve.by_side.items()
        },
        "L": estimate.l,
        "M": estimate.m,
        "jnd": estimate.jnd,
    }
    lines = ["distance    n  chosen  proportion"]
    for p in curve.points:
        lines.append(
            f"{p.distance:>8}  {p.n_trials:>3}  {p.chose_comparison:>6}  {p.proportion:10.3f}"
        )
    lines += [
        "",
        f"L (25% point)  {estimate.l:.3f}",
        f"M (75% point)  {estimate.m:.3f}",
        f"JND            {estimate.jnd:.3f}",
    ]
    _emit(doc, lines, args.pretty)
    return EXIT_OK


def cmd_synth(args, parser) -> int:
    if args.spec:
        text = Path(args.spec).read_text()
        try:
            spec = synthetic.SceneSpec.from_json(text)
        except json.JSONDecodeError as exc:
            parser.error(f"malformed scene spec {args.spec}: {exc}")
        except ValueError as exc:
            parser.error(f"invalid scene spec {args.spec}: {exc}")
        scene_name = args.spec
    else:
        if args.scene not in synthetic.BUILTIN_SCENES:
            parser.error(
                f"unknown builtin scene '{args.scene}' "
                f"(available: {', '.join(sorted(synthetic.BUILTIN_SCENES))})"
            )
        spec = synthetic.BUILTIN_SCENES[args.scene]()
        scene_name = args.scene

    image, gt = synthetic.render(spec)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    image_path = out_dir / "image.pgm"
    gt_path = out_dir / "ground_truth.pgm"
    image_path.write_bytes(save_pgm(image))
    gt_path.write_bytes(save_pgm(image_from_edge_map(gt)))
    doc = {
        "scene": scene_name,
        "seed": args.seed,
        "image": str(image_path),
        "ground_truth": str(gt_path),
        "gt_cardinality": len(gt),
        "width": spec.width,
        "height": spec.height,
    }
    _emit(doc, [f"{k}: {v}" for k, v in doc.items()], args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jndbem",
        description="Perceptual edge map evaluation: scoring, benchmarks, and "
        "forced-choice threshold measurement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_measure_flags(p):
        p.add_argument("--alpha", type=float, default=measures.DEFAULT_ALPHA,
                       help="penalty weight on displaced pixels (default 1/9)")
        p.add_argument("--jnd", type=float, default=2.0,
                       help="displacement threshold in pixels (default 2)")
        p.add_argument("--max-depth", type=float, default=9.0,
                       help="match search radius in pixels (default 9)")

    p_eval = sub.add_parser("evaluate", help="score one candidate edge map against ground truth")
    p_eval.add_argument("--gt", required=True, help="ground truth PGM")
    p_eval.add_argument("--candidate", required=True, help="candidate PGM")
    p_eval.add_argument("--measure", required=True, choices=sorted(measures.MEASURES))
    add_measure_flags(p_eval)
    p_eval.add_argument("--pretty", action="store_true")
    p_eval.set_defaults(func=cmd_evaluate)

    p_bench = sub.add_parser("bench", help="detectors x measures benchmark, optionally vs MOS")
    p_bench.add_argument("--image", required=True, help="input image PGM")
    p_bench.add_argument("--gt", required=True, help="ground truth PGM")
    p_bench.add_argument("--detectors", default=",".join(detectors.DETECTOR_KINDS),
                         help="comma list of detectors")
    p_bench.add_argument("--measures", default="jndbem,fom", help="comma list of measures")
    p_bench.add_argument("--mos", help="CSV of opinion ratings (header: id,rating)")
    p_bench.add_argument("--config", help="JSON file of per-detector parameter overrides")
    p_bench.add_argument("--csv", help="also write a detector,measure,value CSV here")
    add_measure_flags(p_bench)
    p_bench.add_argument("--pretty", action="store_true")
    p_bench.set_defaults(func=cmd_bench)

    p_stim = sub.add_parser("stimuli", help="write a forced-choice trial schedule")
    p_stim.add_argument("--trials-per-condition", type=int, default=10)
    p_stim.add_argument("--seed", type=int, default=0)
    p_stim.add_argument("--out", required=True)
    p_stim.add_argument("--pretty", action="store_true")
    p_stim.set_defaults(func=cmd_stimuli)

    p_jnd = sub.add_parser("jnd-analyze", help="estimate the threshold from a response log")
    p_jnd.add_argument("--schedule", required=True, help="schedule JSON")
    p_jnd.add_argument("--responses", required=True, help="responses JSONL")
    p_jnd.add_argument("--pretty", action="store_true")
    p_jnd.set_defaults(func=cmd_jnd_analyze)

    p_synth = sub.add_parser("synth", help="render a synthetic scene + ground truth as PGM")
    p_synth.add_argument("--spec", help="scene spec JSON (takes precedence over --scene)")
    p_synth.add_argument("--scene", default="default",
                         help="builtin scene name (default: 'default')")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out-dir", required=True)
    p_synth.add_argument("--pretty", action="store_true")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def _parse_name_list(parser, raw: str, known, what: str):
    names = [s.strip() for s in raw.split(",") if s.strip()]
    if not names:
        parser.error(f"no {what}s given")
    for name in names:
        if name not in known:
            parser.error(f"unknown {what} '{name}' (available: {', '.join(sorted(known))})")
    return names


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "stimuli" and args.trials_per_condition < 1:
        parser.error("--trials-per-condition must be >= 1")
    if args.command == "bench":
        args.detectors = _parse_name_list(parser, args.detectors,
                                          detectors.DETECTOR_KINDS, "detector")
        args.measures = _parse_name_list(parser, args.measures,
                                         measures.MEASURES, "measure")
    try:
        if args.command == "synth":
            return cmd_synth(args, parser)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
