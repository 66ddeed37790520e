"""Operator command line wiring the pipeline end to end.

Subcommands read and write the documented JSON-lines/CSV formats only, and
any sampling is fully determined by --seed, so identical inputs and flags
rerun to byte-identical outputs (modulo a live, non-stub backend).

    generate         prompt a backend and write word-problem records
    exec             run solutions through the interpreter
    score            readability CSVs, histogram export, and figure
    adjudicate       resolve annotator labels into per-item verdicts
    agreement        inter-annotator agreement report
    tables           study tables (criteria, operations, errors, accuracy)
    regress          logistic regression over adjudicated outcomes
    controllability  requested-operation compliance table
    export-egsm      instruction-format export of verified items
    serve            run the annotation HTTP service
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, report
from .annotation import (
    adjudicate_all,
    agreement_report,
    load_adjudicated,
    load_labels,
    save_adjudicated,
)
from .gen import (
    GenerationPlan,
    PipelineConfig,
    default_topics,
    generate as run_generation,
    load_config,
    load_records,
    load_topics,
    make_backend,
    sample_problem_records,
    save_records,
)
from .gen.pipeline import attach_execution
from .metrics import corpus_stats


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _config(args) -> PipelineConfig:
    if args.config:
        return load_config(args.config)
    return PipelineConfig()


def _views(args):
    records = load_records(args.records if getattr(args, "records", None)
                           else args.infile)
    adjudicated = load_adjudicated(args.infile)
    labels = load_labels(args.labels) if getattr(args, "labels", None) else None
    return analysis.build_item_views(records, adjudicated, labels)


def _record_views(records):
    """Label-free views (profiles only), for controllability inputs."""
    from mwplab.analysis.tables import ItemView, auto_profile

    views = []
    for record in records:
        views.append(ItemView(
            item_id=record.id, model_id=record.model_id, question=record.question,
            solvable=True, accurate=True, appropriate=True, mac=True,
            profile=auto_profile(record),
            requested_operation=record.requested_operation,
            exec_ok=record.exec.ok if record.exec else None))
    return views


def cmd_generate(args) -> int:
    cfg = _config(args)
    if not cfg.endpoint_url:
        raise CliError("config", "generate needs endpoint_url in the config file")
    pool = (load_records(args.shots) if args.shots else sample_problem_records())
    topics = None
    if args.mode == "topic" and not args.topic:
        topics = tuple(load_topics(cfg.topics_path) if cfg.topics_path
                       else default_topics())
    plan = GenerationPlan(
        model_id=cfg.model_id or "unknown-model",
        pool=tuple(pool),
        seed=args.seed,
        shot_count=args.shot_count,
        topic=args.topic,
        topics=topics,
        operation=args.operation if args.mode == "operation" else None,
    )
    backend = make_backend(cfg.endpoint_url, cfg.model_id)
    records = run_generation(plan, cfg.sampling(), args.n, backend,
                             parallelism=cfg.parallelism)
    save_records(records, args.out)
    ok = sum(1 for r in records if r.exec and r.exec.ok)
    print(f"wrote {len(records)} records to {args.out} (executable: {ok})")
    return 0


def cmd_exec(args) -> int:
    records = [attach_execution(record) for record in load_records(args.infile)]
    save_records(records, args.out)
    ok = sum(1 for r in records if r.exec and r.exec.ok)
    print(f"executed {len(records)} records: {ok} ok, {len(records) - ok} failed")
    return 0


def cmd_score(args) -> int:
    records = load_records(args.infile)
    rows = report.score_records(records)
    if not rows:
        raise CliError("empty", "no records with question text to score")
    report.write_scores_csv(rows, args.out)
    by_model: dict[str, list[float]] = {}
    questions_by_model: dict[str, list[str]] = {}
    for record, row in zip([r for r in records if r.question.strip()], rows):
        by_model.setdefault(row["model_id"], []).append(row["fkgl"])
        questions_by_model.setdefault(record.model_id, []).append(record.question)
    out = Path(args.out)
    stats_path = args.stats_out or out.with_name(out.stem + "_stats.csv")
    hist_path = args.hist_out or out.with_name(out.stem + "_hist.csv")
    figure_path = args.figure_out or out.with_name(out.stem + "_fkgl.png")
    report.write_corpus_stats_csv(
        {m: corpus_stats(qs) for m, qs in questions_by_model.items()}, stats_path)
    report.write_histogram_csv(by_model, hist_path, bin_width=args.bin_width)
    report.render_fkgl_figure(by_model, figure_path, bin_width=args.bin_width)
    written = [str(args.out), str(stats_path), str(hist_path), str(figure_path)]
    if args.logprobs or args.embeddings:
        from .metrics import (corpus_bertscore_f1, load_embeddings,
                              load_logprobs, perplexity)

        ppl = None
        if args.logprobs:
            ppl = {item_id: perplexity(lps)
                   for item_id, lps in load_logprobs(args.logprobs).items()}
        bf1 = None
        if args.embeddings:
            if not args.reference_embeddings:
                raise CliError("config", "--embeddings needs --reference-embeddings")
            bf1 = corpus_bertscore_f1(load_embeddings(args.embeddings),
                                      load_embeddings(args.reference_embeddings))
        autoeval_path = args.autoeval_out or out.with_name(out.stem + "_autoeval.csv")
        report.write_autoeval_csv(ppl, bf1, autoeval_path)
        written.append(str(autoeval_path))
    print("wrote " + ", ".join(written))
    return 0


def cmd_adjudicate(args) -> int:
    labels = load_labels(args.infile)
    if not labels:
        raise CliError("empty", "no records in label file")
    model_ids = {}
    if args.records:
        model_ids = {r.id: r.model_id for r in load_records(args.records)}
    verdicts = adjudicate_all(labels, model_ids=model_ids)
    save_adjudicated(verdicts, args.out)
    mac = sum(1 for v in verdicts if v.mac)
    print(f"adjudicated {len(verdicts)} items ({mac} meet all criteria)")
    return 0


def cmd_agreement(args) -> int:
    labels = load_labels(args.infile)
    result = agreement_report(labels, method=args.method)
    report.write_agreement_csv(result, args.out)
    print(f"wrote agreement report for {result['solvability'].n_items} "
          f"multi-annotated items to {args.out}")
    return 0


def cmd_tables(args) -> int:
    views = _views(args)
    builders = {
        "criteria": analysis.criteria_table,
        "operations": analysis.operation_table,
        "appropriateness-errors": analysis.appropriateness_error_table,
        "accuracy-by-op": analysis.accuracy_by_operation,
    }
    table = builders[args.table](views)
    text = (analysis.to_markdown_text(table) if args.format == "markdown"
            else analysis.to_csv_text(table))
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote {args.table} table to {args.out}")
    return 0


def cmd_regress(args) -> int:
    verdicts = load_adjudicated(args.infile)
    items = [{"model_id": v.model_id, "mac": v.mac}
             for v in verdicts if v.solvable and v.model_id]
    if not items:
        raise CliError("empty", "no solvable items with model ids")
    if args.design != "model-dummies":
        raise CliError("design", f"unknown design {args.design!r}")
    reference = args.reference or sorted({i["model_id"] for i in items})[0]
    design = analysis.model_dummy_design(items, reference=reference)
    result = analysis.fit_logistic(design)
    report.write_regression_csv(result, args.out)
    print(f"fit {len(items)} solvable items, reference {reference!r}, "
          f"{'converged' if result.converged else 'NOT converged'} "
          f"in {result.iterations} iterations")
    return 0


def cmd_controllability(args) -> int:
    prompted = _record_views(load_records(args.infile))
    baseline = _record_views(load_records(args.baseline))
    table = analysis.controllability_eval(prompted, baseline)
    text = (analysis.to_markdown_text(table) if args.format == "markdown"
            else analysis.to_csv_text(table))
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote controllability table to {args.out}")
    return 0


def cmd_export_egsm(args) -> int:
    records = load_records(args.infile)
    adjudicated = load_adjudicated(args.adjudicated)
    count = analysis.export_egsm(records, adjudicated, args.out)
    print(f"exported {count} verified items to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import build_service, create_app

    cfg = _config(args)
    records = load_records(args.items)
    service = build_service(records, persist_path=args.labels_out,
                            directions_dir=cfg.directions_dir,
                            target_depth=args.depth,
                            api_token=cfg.api_token)
    uvicorn.run(create_app(service), host=args.host, port=args.port,
                log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwplab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, infile=True, out=True):
        p.add_argument("--config", help="key/value config file")
        if infile:
            p.add_argument("--in", dest="infile", required=True)
        if out:
            p.add_argument("--out", required=True)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("generate", help="prompt a backend for new problems")
    common(p, infile=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["standard", "topic", "operation"],
                   default="topic")
    p.add_argument("--topic")
    p.add_argument("--operation",
                   choices=["addition", "subtraction", "multiplication", "division"])
    p.add_argument("--shots", help="exemplar records JSONL (default: packaged)")
    p.add_argument("--shot-count", type=int, default=8)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("exec", help="run solutions through the interpreter")
    common(p)
    p.set_defaults(func=cmd_exec)

    p = sub.add_parser("score", help="readability metrics, histograms, figure")
    common(p)
    p.add_argument("--stats-out")
    p.add_argument("--hist-out")
    p.add_argument("--figure-out")
    p.add_argument("--bin-width", type=float, default=1.0)
    p.add_argument("--logprobs", help="JSONL of {id, token_logprobs} for PPL")
    p.add_argument("--embeddings", help="JSONL of {id, vectors} to score")
    p.add_argument("--reference-embeddings",
                   help="JSONL of {id, vectors} compared against")
    p.add_argument("--autoeval-out")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("adjudicate", help="resolve labels into verdicts")
    common(p)
    p.add_argument("--records", help="records JSONL to join model ids from")
    p.set_defaults(func=cmd_adjudicate)

    p = sub.add_parser("agreement", help="inter-annotator agreement report")
    common(p)
    p.add_argument("--method", choices=["item", "pairwise"], default="item")
    p.set_defaults(func=cmd_agreement)

    p = sub.add_parser("tables", help="study tables from adjudicated items")
    common(p)
    p.add_argument("--table", required=True,
                   choices=["criteria", "operations", "appropriateness-errors",
                            "accuracy-by-op"])
    p.add_argument("--records", required=True)
    p.add_argument("--labels")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("regress", help="logistic regression on MaC outcomes")
    common(p)
    p.add_argument("--design", default="model-dummies")
    p.add_argument("--reference", help="reference model absorbed by the intercept")
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("controllability", help="requested-operation compliance")
    common(p)
    p.add_argument("--baseline", required=True)
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.set_defaults(func=cmd_controllability)

    p = sub.add_parser("export-egsm", help="export verified items as "
                                           "instruction data")
    common(p)
    p.add_argument("--adjudicated", required=True)
    p.set_defaults(func=cmd_export_egsm)

    p = sub.add_parser("serve", help="run the annotation service")
    common(p, infile=False, out=False)
    p.add_argument("--items", required=True, help="records JSONL to annotate")
    p.add_argument("--labels-out", help="append-only label persistence file")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--depth", type=int, default=1,
                   help="target labels per item")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        print("error: " + json.dumps({"error": err.kind, "message": str(err)}),
              file=sys.stderr)
        return 1
    except FileNotFoundError as err:
        print("error: " + json.dumps({"error": "missing_file",
                                      "message": str(err)}), file=sys.stderr)
        return 1
    except (ValueError, KeyError) as err:
        print("error: " + json.dumps({"error": "invalid_input",
                                      "message": str(err)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
