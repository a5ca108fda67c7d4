"""Command-line surface: build, check, reconstruct, sweep, export, fixtures.

Every command prints a JSON run report (stable apart from the timing block)
and uses exit codes 0 = holds, 1 = fails, 2 = indeterminate or bad input.
"""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from . import __version__
from . import coxeter as cox
from . import decomp
from . import fixtures as fx
from . import frgraph as fr
from . import subword as sw
from .errors import DimensionMismatch, NotPure, SearchBudgetExceeded, SubwordcxError
from .simplicial import (
    complex_from_json,
    complex_to_json,
    facet_ridge_graph,
    is_pseudomanifold,
    sort_labels,
)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INDETERMINATE = 2


def _report(command: str, body: dict, started: float) -> dict:
    return {
        "tool": "subword",
        "version": __version__,
        "schema": "report-v1",
        "command": command,
        "timing": {"seconds": round(time.time() - started, 6)},
        **body,
    }


def _emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise click.ClickException(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        )


def _load_complex(path: str):
    """Accept either a complex JSON or a subword JSON; return (complex, sc|None)."""
    data = _load_json(path)
    if "facets" in data and "word" not in data:
        return complex_from_json(data), None
    sc = sw.subword_from_json(data)
    return sc.complex, sc


def _parse_word_option(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise click.ClickException(f"bad word {text!r}: {exc}")


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Subword complexes, decomposability checks, and FR-graph reconstruction."""


@main.command()
@click.option("--type", "type_", required=True, help="Coxeter type, e.g. A3 or I2(7)")
@click.option("--word", required=True, help="comma-separated 1-indexed letters, e.g. 1,2,1,2,1")
@click.option("--pi-word", required=True, help="a word for the target element")
@click.option("--check", "check_", type=click.Choice(
    ["spherical", "strong-vd", "costar-deletion-vertex", "costar-link", "costar-deletion-face"]),
    default=None, help="run a checker suite instead of just emitting facets")
@click.option("-o", "--output", type=click.Path(), default=None)
def build(type_: str, word: str, pi_word: str, check_: str | None, output: str | None) -> None:
    """Build a subword complex and emit its facet list."""
    started = time.time()
    try:
        sys_ = cox.build_system(cox.CoxeterType.parse(type_))
        letters = cox.word_from_one_indexed(sys_, _parse_word_option(word))
        pi = cox.evaluate(sys_, cox.word_from_one_indexed(sys_, _parse_word_option(pi_word)))
    except SubwordcxError as exc:
        raise click.ClickException(str(exc))
    sc = sw.build(sys_, letters, pi)
    body: dict = {
        "input": sw.subword_to_json(sc),
        "complex": complex_to_json(sc.complex),
    }
    code = EXIT_HOLDS
    if check_ is not None:
        verdict, details = _run_subword_check(sc, check_)
        body["check"] = {"name": check_, "holds": verdict, **details}
        code = EXIT_HOLDS if verdict else EXIT_FAILS
    _emit(_report("build", body, started), output)
    sys.exit(code)


def _run_subword_check(sc: sw.SubwordComplex, name: str) -> tuple[bool, dict]:
    if name == "spherical":
        ok = sw.is_spherical(sc)
        return ok, {}
    if name == "strong-vd":
        report = sw.strong_vd_pipeline(sc)
        bad = [list(f) for f, s_ok, c_ok in report.entries if not (s_ok and c_ok)]
        return report.holds, {"faces_checked": len(report.entries), "failures": bad}
    faces = [f for f in sc.complex.faces() if len(f) >= 2]
    vertices = [v for v in sc.complex.ground if sc.complex.has_face([v])]
    failures: list = []
    if name == "costar-deletion-vertex":
        for v in vertices:
            if not sw.costar_equals_deletion_check(sc, v):
                failures.append(v)
        return not failures, {"vertices_checked": len(vertices), "failures": failures}
    checker = (
        sw.costar_link_identity_check if name == "costar-link" else sw.costar_deletion_identity_check
    )
    checked = 0
    for face in faces:
        for i in face:
            checked += 1
            if not checker(sc, face, i):
                failures.append({"face": sorted(map(str, face)), "at": str(i)})
    return not failures, {"pairs_checked": checked, "failures": failures}


@main.command()
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--property", "prop", required=True, type=click.Choice(
    ["spherical", "vd", "shellable", "strong-vd", "strong-shellable", "pseudomanifold"]))
@click.option("--budget", type=int, default=decomp.DEFAULT_BUDGET, show_default=True)
@click.option("--certificate/--no-certificate", default=True, show_default=True)
@click.option("-o", "--output", type=click.Path(), default=None)
def check(input_path: str, prop: str, budget: int, certificate: bool, output: str | None) -> None:
    """Decide a property of a complex (or subword complex) file."""
    started = time.time()
    cx, sc = _load_complex(input_path)
    body: dict = {"input": input_path, "property": prop}
    code = EXIT_FAILS
    try:
        if prop == "spherical":
            if sc is None:
                raise click.ClickException("spherical needs a subword-complex input (type/word/pi_word)")
            ok = sw.is_spherical(sc)
            body["holds"] = ok
        elif prop == "pseudomanifold":
            rep = is_pseudomanifold(cx)
            ok = rep.is_pseudomanifold
            body["holds"] = ok
            body["connected"] = rep.connected
            body["bad_ridges"] = [[list(r), c] for r, c in rep.bad_ridges]
        elif prop in ("vd", "shellable"):
            fn = decomp.is_vertex_decomposable if prop == "vd" else decomp.is_shellable
            res = fn(cx, budget=budget, want_certificate=certificate)
            ok = res.holds
            body["holds"] = ok
            if res.certificate is not None:
                body["certificate"] = res.certificate.to_json()
        else:
            fn = (
                decomp.is_strongly_vertex_decomposable
                if prop == "strong-vd"
                else decomp.is_strongly_shellable
            )
            res = fn(cx, budget=budget)
            ok = res.holds
            body["holds"] = ok
            if not ok:
                body["witness"] = {"face": list(res.witness_face), "side": res.witness_side}
        code = EXIT_HOLDS if ok else EXIT_FAILS
    except SearchBudgetExceeded as exc:
        body["holds"] = None
        body["indeterminate"] = str(exc)
        code = EXIT_INDETERMINATE
    except (NotPure, SubwordcxError) as exc:
        raise click.ClickException(str(exc))
    _emit(_report("check", body, started), output)
    sys.exit(code)


@main.command()
@click.argument("path_a", type=click.Path(exists=True))
@click.argument("path_b", type=click.Path(exists=True))
@click.option("--max-isos", type=int, default=100000, show_default=True)
@click.option("-o", "--output", type=click.Path(), default=None)
def reconstruct(path_a: str, path_b: str, max_isos: int, output: str | None) -> None:
    """Enumerate FR-graph isomorphisms between two complexes and test extension."""
    started = time.time()
    cx_a, _ = _load_complex(path_a)
    cx_b, _ = _load_complex(path_b)
    try:
        if not cx_a.is_pure() or not cx_b.is_pure():
            raise NotPure("both inputs must be pure")
        if cx_a.dim != cx_b.dim:
            raise DimensionMismatch(f"dimensions {cx_a.dim} and {cx_b.dim} differ")
    except SubwordcxError as exc:
        raise click.ClickException(str(exc))
    ga, gb = facet_ridge_graph(cx_a), facet_ridge_graph(cx_b)
    verdicts = []
    n = 0
    all_extend = True
    for mapping in fr.isomorphisms_iter(ga, gb):
        n += 1
        if n > max_isos:
            raise click.ClickException(f"more than {max_isos} isomorphisms; raise --max-isos")
        verdict = fr.verify_reconstruction(fr.GraphIso(ga, gb, mapping), cx_a, cx_b)
        all_extend = all_extend and verdict.extends
        if len(verdicts) < 10 or not verdict.extends:
            verdicts.append(verdict.to_json())
    body = {
        "inputs": [path_a, path_b],
        "isomorphisms": n,
        "all_extend": bool(n) and all_extend,
        "verdicts": verdicts,
    }
    _emit(_report("reconstruct", body, started), output)
    sys.exit(EXIT_HOLDS if body["all_extend"] else EXIT_FAILS)


def _strong_vd_worker(args: tuple[str, tuple[int, ...], int]) -> tuple[str, bool]:
    type_, word, max_len = args
    sys_ = cox.build_system(cox.CoxeterType.parse(type_))
    sc = sw.build(sys_, word, cox.demazure_product(sys_, word))
    res = decomp.is_strongly_vertex_decomposable(sc.complex)
    return ",".join(str(q + 1) for q in word), res.holds


@main.command()
@click.option("--type", "type_", required=True)
@click.option("--max-len", type=int, required=True)
@click.option("--max-len-cap", type=int, default=10, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--skip-strong-vd", is_flag=True, default=False)
@click.option("-o", "--output", type=click.Path(), default=None)
def sweep(type_: str, max_len: int, max_len_cap: int, jobs: int, skip_strong_vd: bool, output: str | None) -> None:
    """Reconstruction sweep plus strong decomposability over the word inventory."""
    started = time.time()
    if max_len > max_len_cap:
        raise click.ClickException(f"--max-len {max_len} exceeds the cap {max_len_cap}")
    try:
        sys_ = cox.build_system(cox.CoxeterType.parse(type_))
    except SubwordcxError as exc:
        raise click.ClickException(str(exc))
    inventory = sw.spherical_inventory(sys_, max_len)
    names = [",".join(str(q + 1) for q in sc.word) for sc in inventory]

    strong_failures: list[str] = []
    if not skip_strong_vd:
        if jobs > 1:
            tasks = [(type_, sc.word, max_len) for sc in inventory]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for name, ok in pool.map(_strong_vd_worker, tasks, chunksize=64):
                    if not ok:
                        strong_failures.append(name)
        else:
            cache = decomp.DecompCache()
            for sc, name in zip(inventory, names):
                if not decomp.is_strongly_vertex_decomposable(sc.complex, cache=cache).holds:
                    strong_failures.append(name)

    recon = fr.exhaustive_reconstruction_sweep([sc.complex for sc in inventory], names)
    body = {
        "type": type_,
        "max_len": max_len,
        "inventory_size": len(inventory),
        "strong_vd_failures": strong_failures,
        "reconstruction": recon.to_json(),
    }
    ok = not strong_failures and recon.all_extend and not recon.flagged_pairs
    _emit(_report("sweep", body, started), output)
    sys.exit(EXIT_HOLDS if ok else EXIT_FAILS)


@main.command("export-dot")
@click.argument("input_path", type=click.Path(exists=True), required=False)
@click.option("--pair", nargs=2, type=click.Path(exists=True), default=None,
              help="two complex files; draws both FR graphs with a dashed correspondence")
@click.option("-o", "--output", type=click.Path(), default=None)
def export_dot(input_path: str | None, pair: tuple[str, str] | None, output: str | None) -> None:
    """Write the facet-ridge graph (or an isomorphism diagram) in DOT format."""
    if (input_path is None) == (pair is None):
        raise click.ClickException("pass exactly one of INPUT_PATH or --pair A B")
    if input_path is not None:
        cx, _ = _load_complex(input_path)
        text = fr.graph_to_dot(facet_ridge_graph(cx))
    else:
        cx_a, _ = _load_complex(pair[0])
        cx_b, _ = _load_complex(pair[1])
        iso = fr.find_isomorphism(facet_ridge_graph(cx_a), facet_ridge_graph(cx_b))
        if iso is None:
            raise click.ClickException("facet-ridge graphs are not isomorphic")
        text = fr.iso_pair_dot(iso)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.group()
def fixtures() -> None:
    """Inspect and verify the bundled fixture complexes."""


@fixtures.command("list")
def fixtures_list() -> None:
    for name in fx.FIXTURE_NAMES:
        click.echo(name)


@fixtures.command("verify")
@click.argument("name")
@click.option("-o", "--output", type=click.Path(), default=None)
def fixtures_verify(name: str, output: str | None) -> None:
    """Replay a fixture's construction and check its expected properties."""
    started = time.time()
    try:
        report = fx.verify_fixture(name)
    except KeyError as exc:
        raise click.ClickException(str(exc))
    _emit(_report("fixtures verify", report.to_json(), started), output)
    sys.exit(EXIT_HOLDS if report.ok else EXIT_FAILS)


@fixtures.command("emit")
@click.argument("name")
@click.option("-o", "--output", type=click.Path(), default=None)
def fixtures_emit(name: str, output: str | None) -> None:
    """Print a fixture's stored JSON data."""
    try:
        data = fx.load_data(name)
    except FileNotFoundError:
        raise click.ClickException(f"unknown fixture {name!r}; known: {fx.FIXTURE_NAMES}")
    text = json.dumps(data, indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


if __name__ == "__main__":
    main()
