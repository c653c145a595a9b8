"""Command-line surface: one subcommand per check, text or JSON reports, exit codes 0/1/2/3."""

import json
import sys
from enum import Enum
from typing import Callable, List, Optional

import click
import typer
from rich.console import Console
from rich.text import Text

from src.controller import algebra, model, propositional, zf
from src.decorator import command
from src.lib.evaluator import NegationPolicy
from src.middleware.log import configure_logging
from src.models.report import AxiomCheckResult, ValidationReport, Verdict
from src.models.requests import (
    EvalRequest,
    LeibnizRequest,
    LemmasRequest,
    PropAxiomsRequest,
    StructureRequest,
    UniverseRequest,
    ZfRequest,
)
from src.utils import constant

app = typer.Typer(add_completion=False, no_args_is_help=True, help="Fidel structures and bounded ZFC_omega checks.")
console = Console(soft_wrap=True, highlight=False)

VERDICT_STYLE = {
    constant.VALID: "green",
    constant.VALID_UP_TO_BOUND: "green",
    constant.COUNTEREXAMPLE: "red",
    constant.INCONCLUSIVE: "yellow",
}


class OutputFormat(str, Enum):
    text = constant.FORMAT_TEXT
    json = constant.FORMAT_JSON


class SchemaKind(str, Enum):
    verdict = "verdict"
    axiom = "axiom"
    validation = "validation"


@app.callback()
def main(
    ctx: typer.Context,
    output: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
    ceiling: Optional[int] = typer.Option(None, "--ceiling", help="Largest universe to materialize"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for every sampler"),
):
    ctx.obj = {"format": output, "ceiling": ceiling, "seed": seed}


# Rendering


def _verdict_lines(item: dict) -> List[Text]:
    title = item.get("check") or item.get("axiom")
    verdict = item["verdict"]
    line = Text(f"{title}: ")
    line.append(verdict, style=VERDICT_STYLE.get(verdict, ""))
    line.append(f" (checked {item.get('checked', 0)})")
    lines = [line]
    if item.get("witness"):
        lines.append(Text("  witness: " + ", ".join(f"{k} = {v}" for k, v in item["witness"].items())))
    if item.get("values"):
        lines.append(Text("  values: " + ", ".join(f"||{k}|| = {v}" for k, v in item["values"].items())))
    if item.get("seed") is not None:
        lines.append(Text(f"  seed: {item['seed']}"))
    for note in item.get("notes", []):
        lines.append(Text(f"  note: {note}"))
    return lines


def _error_lines(payload: dict) -> List[Text]:
    line = Text(f"{payload.get('error', 'error')}: ", style="red")
    line.append(payload.get("message", ""))
    lines = [line]
    if "span" in payload:
        span = payload["span"]
        lines.append(Text(f"  at {payload.get('source', '<input>')}:{span['start']}-{span['end']}"))
    if payload.get("expected"):
        lines.append(Text("  expected one of: " + ", ".join(payload["expected"])))
    for violation in payload.get("report", {}).get("violations", [])[:10]:
        lines.append(Text(f"  {violation['law']}: {violation.get('witness', {})}"))
    return lines


def _emit(ctx: typer.Context, exit_code: int, payload: dict, text: Callable[[dict], List[Text]], documents: str = ""):
    """Print the report and leave with the exit code; in JSON mode a list under `documents` is one line each."""
    failed = exit_code >= constant.EXIT_USAGE
    if ctx.obj["format"] is OutputFormat.json:
        if documents and not failed and documents in payload:
            extra = {k: v for k, v in payload.items() if k != documents and not isinstance(v, list)}
            for item in payload[documents]:
                typer.echo(json.dumps({**extra, **item}, ensure_ascii=False))
        else:
            typer.echo(json.dumps(payload, ensure_ascii=False), err=failed)
    else:
        for line in _error_lines(payload) if failed else text(payload):
            if failed:
                typer.echo(line.plain, err=True)
            else:
                console.print(line)
    raise typer.Exit(code=exit_code)


def _checks_text(key: str):
    def render(payload: dict) -> List[Text]:
        lines = []
        for item in payload[key]:
            lines += _verdict_lines(item)
        for violation in payload.get("constraint_violations", []):
            lines.append(
                Text(
                    f"  constraint violated: ~ of {violation['value']} gave {violation['negation']}, "
                    f"allowed {violation['allowed']}",
                    style="yellow",
                )
            )
        return lines

    return render


def _validation_text(payload: dict) -> List[Text]:
    subject = payload.get("algebra") or payload.get("structure")
    line = Text(f"{subject}: ")
    line.append("valid" if payload["valid"] else "invalid", style="green" if payload["valid"] else "red")
    lines = [line, Text(payload["message"])]
    for violation in payload["violations"]:
        witness = ", ".join(f"{k} = {v}" for k, v in violation.get("witness", {}).items())
        lines.append(Text(f"  {violation['law']}: {witness or violation.get('detail', '')}"))
    for x, allowed in payload.get("N", {}).items():
        lines.append(Text(f"  N_{x} = {{{', '.join(allowed)}}}"))
    return lines


def _paraconsistent_text(payload: dict) -> List[Text]:
    if not payload["paraconsistent"]:
        return [Text(f"{payload['structure']}: {payload['formula']} holds under every valuation")]
    witness = ", ".join(f"v({k}) = {v}" for k, v in payload["witness"].items())
    return [
        Text(f"{payload['structure']}: paraconsistent", style="green"),
        Text(f"  witness: {witness}"),
        Text(f"  ||{payload['formula']}|| = {payload['value']}"),
    ]


def _universe_text(payload: dict) -> List[Text]:
    lines = [Text(f"|V_<={k}| = {count}") for k, count in payload["counts"].items()]
    for name in payload.get("names", []):
        lines.append(Text(f"  {name}"))
    return lines


def _eval_text(payload: dict) -> List[Text]:
    lines = [Text(payload["value"])]
    for violation in payload.get("constraint_violations", []):
        lines.append(Text(f"  constraint violated: ~ of {violation['value']} gave {violation['negation']}", style="yellow"))
    return lines


# Subcommands


@app.command("check-algebra")
@command("check-algebra")
def check_algebra(ctx: typer.Context, structure: str = typer.Argument(..., help="File, structure name or built-in")):
    """Validate the generalized Heyting algebra laws."""
    exit_code, payload = algebra.check_algebra(StructureRequest(structure=structure))
    _emit(ctx, exit_code, payload, _validation_text)


@app.command("saturate")
@command("saturate")
def saturate(ctx: typer.Context, structure: str = typer.Argument(...)):
    """Print the saturated structure over the algebra, in definition-file form."""
    exit_code, payload = algebra.saturate_structure(StructureRequest(structure=structure))
    if exit_code == constant.EXIT_VALID:
        typer.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        raise typer.Exit(code=exit_code)
    _emit(ctx, exit_code, payload, _validation_text)


@app.command("check-structure")
@command("check-structure")
def check_structure(ctx: typer.Context, structure: str = typer.Argument(...)):
    """Validate the algebra and both conditions on the N family."""
    exit_code, payload = algebra.check_structure(StructureRequest(structure=structure))
    _emit(ctx, exit_code, payload, _validation_text)


@app.command("prop-axioms")
@command("prop-axioms")
def prop_axioms(
    ctx: typer.Context,
    structure: str = typer.Argument(...),
    schema: Optional[List[str]] = typer.Option(None, "--schema", help="a1..a10, l or gN; repeatable"),
    all_schemas: bool = typer.Option(False, "--all", help="Every schema a1..a10 and l"),
    depth: int = typer.Option(0, "--depth", help="Substitute formulas up to this depth for the metavariables"),
    extensions: bool = typer.Option(False, "--extensions", help="Also report the smallest valid G_n and L"),
):
    """Check the propositional axiom schemas under every admissible valuation."""
    schemas = list(constant.SCHEMAS) if all_schemas or not schema else schema
    request = PropAxiomsRequest(structure=structure, schemas=schemas, depth=depth, extensions=extensions)
    exit_code, payload = propositional.prop_axioms(request)

    def render(payload: dict) -> List[Text]:
        lines = _checks_text("checks")(payload)
        profile = payload.get("extensions")
        if profile:
            smallest = profile["smallest_gn"] or f"none up to {profile['checked_up_to']}"
            lines.append(Text(f"smallest valid G_n: {smallest}; L valid: {profile['linear']}"))
        return lines

    _emit(ctx, exit_code, payload, render, documents="checks")


@app.command("paraconsistent")
@command("paraconsistent")
def paraconsistent(ctx: typer.Context, structure: str = typer.Argument(...)):
    """Search for a valuation refuting (~alpha & alpha) -> beta."""
    exit_code, payload = propositional.paraconsistent(StructureRequest(structure=structure))
    _emit(ctx, exit_code, payload, _paraconsistent_text)


@app.command("universe")
@command("universe")
def universe(
    ctx: typer.Context,
    structure: str = typer.Argument(...),
    rank: int = typer.Option(2, "--rank"),
    stats: bool = typer.Option(False, "--stats", help="Only the per-rank counts, without listing names"),
):
    """Enumerate V_<=K and print its size at every rank."""
    request = UniverseRequest(structure=structure, rank=rank, ceiling=ctx.obj["ceiling"])
    exit_code, payload = model.universe(request)
    if stats:
        payload.pop("names", None)
    _emit(ctx, exit_code, payload, _universe_text)


@app.command("eval")
@command("eval")
def evaluate(
    ctx: typer.Context,
    structure: str = typer.Argument(...),
    formula: str = typer.Argument(..., help="Closed formula; '-' reads it from stdin"),
    rank: int = typer.Option(2, "--rank"),
    policy: NegationPolicy = typer.Option(NegationPolicy.STANDARD, "--policy"),
):
    """Print the truth value of a closed formula."""
    if formula == "-":
        formula = sys.stdin.read()
    request = EvalRequest(structure=structure, formula=formula, rank=rank, policy=policy, ceiling=ctx.obj["ceiling"])
    exit_code, payload = model.evaluate(request)
    _emit(ctx, exit_code, payload, _eval_text)


@app.command("leibniz")
@command("leibniz")
def leibniz(
    ctx: typer.Context,
    structure: str = typer.Argument(...),
    rank: int = typer.Option(2, "--rank"),
    depth: int = typer.Option(1, "--depth"),
    policy: NegationPolicy = typer.Option(NegationPolicy.STANDARD, "--policy"),
    negation_free: bool = typer.Option(False, "--negation-free", help="Only negation-free templates"),
    sample_rank: Optional[int] = typer.Option(None, "--sample-rank", help="Add a sampled pass at this rank"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    seed: Optional[int] = typer.Option(None, "--seed"),
):
    """Check u eq v & phi(u) <= phi(v) over the template family."""
    request = LeibnizRequest(
        structure=structure,
        rank=rank,
        depth=depth,
        policy=policy,
        negation_free_only=negation_free,
        sample_rank=sample_rank,
        samples=samples,
        seed=seed if seed is not None else ctx.obj["seed"],
        ceiling=ctx.obj["ceiling"],
    )
    exit_code, payload = model.leibniz(request)
    _emit(ctx, exit_code, payload, _checks_text("checks"), documents="checks")


@app.command("zf")
@command("zf")
def zf_axioms(
    ctx: typer.Context,
    structure: str = typer.Argument(...),
    rank: int = typer.Option(2, "--rank"),
    axiom: Optional[str] = typer.Option(None, "--axiom", help=", ".join(constant.AXIOMS)),
    depth: int = typer.Option(1, "--depth"),
    policy: NegationPolicy = typer.Option(NegationPolicy.STANDARD, "--policy"),
    template: Optional[str] = typer.Option(None, "--template", help="One template in x for the schema axioms"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    infinity_bound: Optional[int] = typer.Option(None, "--infinity-bound", help="N_max for Infinity"),
):
    """Verify the set-theoretic axioms at a bounded rank."""
    request = ZfRequest(
        structure=structure,
        rank=rank,
        axiom=axiom,
        depth=depth,
        policy=policy,
        template=template,
        samples=samples,
        seed=seed if seed is not None else ctx.obj["seed"],
        infinity_bound=infinity_bound,
        ceiling=ctx.obj["ceiling"],
    )
    exit_code, payload = zf.check_zf(request)
    _emit(ctx, exit_code, payload, _checks_text("results"), documents="results")


@app.command("lemmas")
@command("lemmas")
def lemmas(
    ctx: typer.Context,
    structure: str = typer.Argument(...),
    rank: int = typer.Option(2, "--rank"),
    policy: NegationPolicy = typer.Option(NegationPolicy.STANDARD, "--policy"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    seed: Optional[int] = typer.Option(None, "--seed"),
):
    """Identity laws, canonical-name lemma, bounded-quantifier exactness and monotonicity."""
    request = LemmasRequest(
        structure=structure,
        rank=rank,
        policy=policy,
        samples=samples,
        seed=seed if seed is not None else ctx.obj["seed"],
        ceiling=ctx.obj["ceiling"],
    )
    exit_code, payload = model.lemmas(request)
    _emit(ctx, exit_code, payload, _checks_text("checks"), documents="checks")


@app.command("schema")
def schema(kind: SchemaKind = typer.Argument(SchemaKind.axiom)):
    """Print the JSON Schema of a report document."""
    models = {SchemaKind.verdict: Verdict, SchemaKind.axiom: AxiomCheckResult, SchemaKind.validation: ValidationReport}
    typer.echo(json.dumps(models[kind].model_json_schema(), indent=2))


def run_command(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code instead of leaving the process."""
    configure_logging()
    try:
        result = app(args=argv, prog_name="fidelzf", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return constant.EXIT_USAGE
    except click.exceptions.Abort:
        return constant.EXIT_USAGE
    return result if isinstance(result, int) else constant.EXIT_VALID


if __name__ == "__main__":
    sys.exit(run_command())
