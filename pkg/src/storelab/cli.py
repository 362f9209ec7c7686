"""Command-line entry point.

Subcommands: serve, gen-tasks, validate, analyze, compare, bench, reset,
fixture. Exit codes: 0 success, 1 usage, 2 validation errors present,
3 polish-loop halt, 4 runtime failure.

Configuration precedence: command-line flags, then ``STORELAB_*``
environment variables, then an optional JSON config file (``--config``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from storelab import jsonio
from storelab.errors import PolishLoopHalt, StorelabError

log = logging.getLogger("storelab")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_POLISH_HALT = 3
EXIT_RUNTIME = 4

CONFIG_KEYS = ("host", "port", "seed", "env", "generator", "judge", "profile")


def resolve_setting(name: str, flag_value, config: dict, default):
    """flags > STORELAB_<NAME> env var > config file > default."""
    if flag_value is not None:
        return flag_value
    env_value = os.environ.get(f"STORELAB_{name.upper()}")
    if env_value is not None:
        return type(default)(env_value) if default is not None else env_value
    if name in config:
        return config[name]
    return default


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _load_bundle(directory: str):
    from storelab.catalog import load_shop_bundle

    return load_shop_bundle(directory)


# -- subcommand implementations ---------------------------------------------


def cmd_serve(args: argparse.Namespace, config: dict) -> int:
    from storelab.engine import serve

    bundle = _load_bundle(args.bundle_dir)
    host = resolve_setting("host", args.host, config, "127.0.0.1")
    port = int(resolve_setting("port", args.port, config, 8400))
    seed = int(resolve_setting("seed", args.seed, config, 0))
    handle = serve(bundle, host=host, port=port, seed=seed)
    print(f"serving {bundle.slug} at {handle.url} (Ctrl.C to stop)")
    try:
        handle.thread.join()
    except KeyboardInterrupt:
        handle.close()
    return EXIT_OK


def cmd_gen_tasks(args: argparse.Namespace, config: dict) -> int:
    from storelab.journeys import generate_journeys, resolve_generator
    from storelab.tasks import (
        apply_overrides,
        assemble_benchmark,
        generate_short_horizon,
        load_overrides,
    )

    bundle = _load_bundle(args.bundle_dir)
    seed = int(resolve_setting("seed", args.seed, config, 0))
    short = generate_short_horizon(
        bundle,
        rng_seed=seed,
        discovery_limit=args.discovery_limit,
        collection_limit=args.collection_limit,
    )
    journeys = []
    audit = None
    if args.journeys > 0:
        generator_spec = resolve_setting("generator", args.generator, config, "stub")
        generator = resolve_generator(generator_spec, bundle, args.journeys)
        result = generate_journeys(
            generator, bundle, args.journeys, timeout=args.generator_timeout
        )
        audit = result.audit
        if args.audit_out:
            jsonio.dump_path(Path(args.audit_out), audit)
        if result.halted:
            print(
                f"polish loop halted after {result.rounds_used} round(s); "
                "no benchmark emitted",
                file=sys.stderr,
            )
            return EXIT_POLISH_HALT
        journeys = result.tasks

    overrides = load_overrides(Path(args.bundle_dir) / "data_sources")
    if overrides:
        merged = apply_overrides(short + journeys, overrides)
        short = [t for t in merged if t.bundle_tag != "hard_long_horizon"]
        journeys = [t for t in merged if t.bundle_tag == "hard_long_horizon"]
    benchmark = assemble_benchmark(bundle, short, journeys)
    out = Path(args.out or f"{bundle.slug}-benchmark.json")
    jsonio.dump_path(out, benchmark.to_json())
    bundles = benchmark.bundles
    print(
        f"wrote {out} ({len(bundles['easy_short_horizon'])} short, "
        f"{len(bundles['hard_long_horizon'])} journeys)"
    )
    if audit is not None:
        rounds = max(entry["round"] for entry in audit)
        print(f"journey polish rounds used: {rounds}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, config: dict) -> int:
    from storelab.tasks.model import BenchmarkFile
    from storelab.validation import exit_disposition, validate

    bundle = _load_bundle(args.bundle_dir)
    benchmark = BenchmarkFile.from_json(jsonio.load_path(Path(args.benchmark)))
    issues = validate(benchmark.tasks, bundle)
    disposition = exit_disposition(issues)
    sys.stdout.write(disposition["report"])
    if args.issues_out:
        jsonio.dump_path(Path(args.issues_out), [i.to_json() for i in issues])
    return disposition["code"]


def cmd_analyze(args: argparse.Namespace, config: dict) -> int:
    from storelab.analyzer import analyze_site

    report, _ = analyze_site(
        args.base_url,
        name=args.name,
        max_pages=args.max_pages,
        max_depth=args.max_depth,
        collapse_routes=args.collapse_routes,
    )
    out = Path(args.out or "report.json")
    jsonio.dump_path(out, report.to_json())
    summary = report.graph
    print(
        f"wrote {out}: {summary['nodes']} nodes, {summary['edges']} edges, "
        f"avg out-degree {summary['avg_out_degree']}"
    )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, config: dict) -> int:
    from storelab.analyzer import ComplexityReport, compare_report
    from storelab.analyzer.compare import render_comparison_table

    reports = [
        ComplexityReport.from_json(jsonio.load_path(Path(p))) for p in args.reports
    ]
    comparison = compare_report(reports)
    sys.stdout.write(render_comparison_table(comparison))
    if args.out:
        jsonio.dump_path(Path(args.out), comparison)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, config: dict) -> int:
    from storelab.runner import PROFILES, aggregate, gate_and_judge, resolve_judge, run_task
    from storelab.runner.agents import resolve_agent
    from storelab.tasks.model import BenchmarkFile

    benchmark = BenchmarkFile.from_json(jsonio.load_path(Path(args.benchmark)))
    env_url = resolve_setting("env", args.env, config, None)
    if not env_url:
        print("bench requires --env <url>", file=sys.stderr)
        return EXIT_USAGE
    profile_name = resolve_setting("profile", args.profile, config, "browsergym")
    if profile_name not in PROFILES:
        print(f"unknown profile: {profile_name}", file=sys.stderr)
        return EXIT_USAGE
    profile = PROFILES[profile_name]
    agent_factory = resolve_agent(resolve_setting("agent", args.agent, config, "scripted"))
    judge = resolve_judge(resolve_setting("judge", args.judge, config, "stub"))
    repeats = args.repeats if args.repeats is not None else profile.repeats

    task_ids = set(args.only) if args.only else None
    verdicts = []
    for task in benchmark.tasks:
        if task_ids is not None and task.id not in task_ids:
            continue
        for _ in range(repeats):
            rollout = run_task(agent_factory, task, env_url, profile.budgets)
            verdict = gate_and_judge(rollout, task, judge, mode=profile.url_mode)
            verdicts.append(verdict)
            marker = "PASS" if verdict.success else "FAIL"
            print(f"{marker} {task.id} ({rollout.termination}, {rollout.steps_used} steps)")
    report = aggregate(benchmark, verdicts)
    report["profile"] = profile.name
    report["repeats"] = repeats
    out = Path(args.out or "results.json")
    jsonio.dump_path(out, report)
    for tag, row in report["bundles"].items():
        if row["pass_rate"] is not None:
            print(f"{tag}: pass rate {row['pass_rate']} over {row['cells']} cells")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_reset(args: argparse.Namespace, config: dict) -> int:
    import httpx

    env_url = resolve_setting("env", args.env, config, None)
    if not env_url:
        print("reset requires --env <url>", file=sys.stderr)
        return EXIT_USAGE
    response = httpx.post(f"{env_url.rstrip('/')}/__reset", params={"scope": args.scope})
    response.raise_for_status()
    print(response.json())
    return EXIT_OK


def cmd_fixture(args: argparse.Namespace, config: dict) -> int:
    from storelab.fixtures import write_demo_bundle, write_random_bundle

    if args.action != "init":
        print("unknown fixture action; use: fixture init <dir>", file=sys.stderr)
        return EXIT_USAGE
    target = Path(args.directory)
    if args.random:
        import random

        seed = int(resolve_setting("seed", args.seed, config, 0))
        write_random_bundle(target, random.Random(seed))
    else:
        write_demo_bundle(target)
    print(f"wrote fixture shop to {target}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storelab",
        description="Sandbox storefront engine, benchmark generator, validator, "
                    "analyzer, and bench harness.",
        epilog="Configuration precedence: flags > STORELAB_* environment "
               "variables > --config JSON file.",
    )
    parser.add_argument("--config", help="JSON config file")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("serve", help="serve a bundle as an HTTP storefront")
    p.add_argument("bundle_dir")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("gen-tasks", help="generate a benchmark file for a bundle")
    p.add_argument("bundle_dir")
    p.add_argument("--journeys", type=int, default=0,
                   help="number of long-horizon journeys to author")
    p.add_argument("--generator", default=None,
                   help="journey generator: stub | stub-stubborn | <command>")
    p.add_argument("--generator-timeout", type=float, default=300.0)
    p.add_argument("--discovery-limit", type=int, default=12)
    p.add_argument("--collection-limit", type=int, default=6)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--audit-out", default=None,
                   help="write the polish-loop audit log JSON here")
    p.set_defaults(func=cmd_gen_tasks)

    p = sub.add_parser("validate", help="validate a benchmark file against a bundle")
    p.add_argument("benchmark")
    p.add_argument("bundle_dir")
    p.add_argument("--issues-out", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="crawl a storefront and measure complexity")
    p.add_argument("base_url")
    p.add_argument("--name", default="site")
    p.add_argument("--max-pages", type=int, default=200)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--collapse-routes", action="store_true",
                   help="collapse /products/<any> style routes to pattern nodes")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="compare two or more complexity reports")
    p.add_argument("reports", nargs="+")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="run a benchmark against a storefront")
    p.add_argument("benchmark")
    p.add_argument("--env", default=None, help="storefront base URL")
    p.add_argument("--agent", default=None, help="scripted | <command>")
    p.add_argument("--judge", default=None, help="stub | <command>")
    p.add_argument("--profile", default=None, choices=["browsergym", "internal"])
    p.add_argument("--repeats", type=int, default=None)
    p.add_argument("--only", nargs="*", default=None, help="limit to these task ids")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("reset", help="reset a running storefront")
    p.add_argument("--env", default=None)
    p.add_argument("--scope", choices=["session", "all"], default="all")
    p.set_defaults(func=cmd_reset)

    p = sub.add_parser("fixture", help="emit bundled fixture shops")
    p.add_argument("action", choices=["init"])
    p.add_argument("directory")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_fixture)

    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, config)
    except PolishLoopHalt as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_POLISH_HALT
    except StorelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        return EXIT_RUNTIME


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
