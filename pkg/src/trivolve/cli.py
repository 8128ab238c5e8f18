"""Batch command-line surface.

Exit codes separate mathematical failures from usage failures so CI can
tell a law regression from a bad input: 0 means every certification
passed, 1 means a mathematical certification failed (the report carries
the violated law and residual), 2 means the inputs did not parse.

Reports are deterministic: identical inputs and seed produce
byte-identical JSON.  The ``TRIVOLVE_SEED`` environment variable
overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .algebra import Algebra
from .duality import (
    arens_products,
    check_introverted,
    extend_involution,
    find_characters,
    full_dual,
    search_trivolutions,
    tim_obstruction_check,
    tim_set,
    verify_character,
)
from .errors import CertificationFailure, UsageError
from .linalg import EPS, EPS_RANK
from .serialization import (
    array_to_json,
    dumps_report,
    jsonable,
    load_algebra,
    load_element,
    load_map,
    map_to_json,
    read_json,
)
from .spectra import spectrum, verify_spectral_inclusion
from .starmap import conjugation_map
from .suite import run_suite
from .trivolution import canonical_decomposition, classify_star_map, factor_through_involution, check_trivolutive_hom
from .unitization import find_type1_solutions, range_identity, verify_extension

COMMANDS = ("check", "decompose", "factor", "hom", "extend", "spectra",
            "arens", "tim", "search", "suite")


@dataclass
class RunConfig:
    """Everything one batch run needs; mirrors the CLI flags."""

    command: str
    tolerance: float = EPS
    rank_threshold: float = EPS_RANK
    seed: int = 0
    output_format: str = "text"
    out: str | None = None
    algebra: str | None = None
    algebra2: str | None = None
    map: str | None = None
    map2: str | None = None
    map3: str | None = None
    element: str | None = None
    family: str | None = None
    params: str | None = None
    character: str | None = None
    dual_basis: str | None = None

    def __post_init__(self):
        if self.tolerance <= 0 or self.rank_threshold <= 0:
            raise UsageError("tolerances must be positive")


def _need(config: RunConfig, attr: str) -> str:
    value = getattr(config, attr)
    if value is None:
        raise UsageError(f"command {config.command!r} requires --{attr.replace('_', '-')}")
    return value


def _load_pair(config: RunConfig):
    algebra = load_algebra(_need(config, "algebra"))
    tau = load_map(_need(config, "map"), default_source=algebra)
    return algebra, tau


def _load_space(config: RunConfig, algebra: Algebra):
    if config.dual_basis is None:
        return full_dual(algebra)
    data = read_json(config.dual_basis)
    rows = data["basis"] if isinstance(data, dict) else data
    from .serialization import array_from_json

    basis = array_from_json(rows, (len(rows), algebra.dim)).T
    return check_introverted(algebra, basis, config.tolerance)


def _classification_report(verdict) -> dict:
    return {
        "classification": verdict.kind,
        "is_conjugate_linear": verdict.is_conjugate_linear,
        "is_anti_hom": verdict.is_anti_hom,
        "cubes_to_self": verdict.cubes_to_self,
        "is_injective": verdict.is_injective,
        "norm_of_map": verdict.norm_of_map,
        "residuals": {"anti": verdict.anti_residual, "cube": verdict.cube_residual},
    }


def _cmd_check(config: RunConfig) -> dict:
    algebra, tau = _load_pair(config)
    verdict = classify_star_map(algebra, tau, config.tolerance, config.rank_threshold)
    report = _classification_report(verdict)
    report["algebra_dim"] = algebra.dim
    return report


def _cmd_decompose(config: RunConfig) -> dict:
    algebra, tau = _load_pair(config)
    verdict = classify_star_map(algebra, tau, config.tolerance, config.rank_threshold)
    dec = canonical_decomposition(algebra, tau, config.tolerance, config.rank_threshold)
    return {
        "classification": verdict.kind,
        "decomposition": {
            "I_basis": array_to_json(dec.ideal_I.canonical_columns()),
            "B_basis": array_to_json(dec.embedding),
            "p": array_to_json(dec.projection_p.matrix),
            "rho": array_to_json(dec.involution_rho.matrix),
        },
        "residuals": dec.residuals,
    }


def _cmd_factor(config: RunConfig) -> dict:
    algebra, tau = _load_pair(config)
    if config.map2 is not None:
        j = load_map(config.map2, default_source=algebra)
    else:
        j = conjugation_map(algebra)
    fact = factor_through_involution(algebra, tau, j, config.tolerance, config.rank_threshold)
    return {
        "c_dim": fact.c.dim,
        "lambda": map_to_json(fact.lam),
        "sigma": map_to_json(fact.sigma),
        "mu": map_to_json(fact.mu),
        "residuals": fact.residuals,
    }


def _cmd_hom(config: RunConfig) -> dict:
    a1 = load_algebra(_need(config, "algebra"))
    a2 = load_algebra(config.algebra2) if config.algebra2 else a1
    tau1 = load_map(_need(config, "map"), default_source=a1)
    tau2 = load_map(config.map2, default_source=a2) if config.map2 else \
        load_map(_need(config, "map"), default_source=a2)
    pi = load_map(_need(config, "map3"), default_source=a1, default_target=a2)
    blocks = check_trivolutive_hom(a1, tau1, a2, tau2, pi,
                                   config.tolerance, config.rank_threshold)
    return {
        "pi11": map_to_json(blocks.pi11),
        "pi22": map_to_json(blocks.pi22),
        "residuals": blocks.residuals,
    }


def _extension_record(spec) -> dict:
    return {
        "family": spec.family,
        "lambda0": [spec.lambda0.real, spec.lambda0.imag],
        "x0": array_to_json(spec.x0.coords),
        "norm_of_extension": spec.norm_of_extension,
        "contractive": spec.contractive,
        "best_effort": spec.best_effort,
        "residuals": spec.residuals,
    }


def _cmd_extend(config: RunConfig) -> dict:
    algebra, tau = _load_pair(config)
    eps, rank = config.tolerance, config.rank_threshold
    records = []
    solutions = find_type1_solutions(algebra, tau, seed=config.seed, eps=eps, eps_rank=rank)
    for x0 in solutions.solutions:
        spec = verify_extension(algebra, tau, 1.0, x0, eps, rank)
        record = _extension_record(spec)
        record["best_effort"] = solutions.best_effort
        records.append(record)
    e_b = range_identity(algebra, tau, eps, rank)
    if e_b is not None:
        records.append(_extension_record(verify_extension(algebra, tau, 0.0, e_b, eps, rank)))
    return {"extensions": records, "count": len(records)}


def _cmd_spectra(config: RunConfig) -> dict:
    algebra = load_algebra(_need(config, "algebra"))
    x = load_element(_need(config, "element"), algebra)
    spec = spectrum(algebra, x)
    report = {
        "spectrum": [[v.real, v.imag] for v in spec.values],
        "computed_in": spec.computed_in,
    }
    if config.map is not None:
        tau = load_map(config.map, default_source=algebra)
        inclusion = verify_spectral_inclusion(algebra, tau, x,
                                              eps=config.tolerance,
                                              eps_rank=config.rank_threshold)
        report["inclusion"] = {
            "range_spectrum": [[v.real, v.imag] for v in inclusion.spectrum_in_range.values],
            "max_mismatch": inclusion.max_mismatch,
            "included": inclusion.included,
            "inverse_checked": inclusion.inverse_checked,
            "inverse_residual": inclusion.inverse_residual,
        }
        if not inclusion.included:
            raise CertificationFailure("spectral inclusion failed",
                                       law="spec_B(t(x)) inside conj spec_A(x)",
                                       residual=inclusion.max_mismatch,
                                       details=jsonable(report))
    return report


def _cmd_arens(config: RunConfig) -> dict:
    algebra = load_algebra(_need(config, "algebra"))
    space = _load_space(config, algebra)
    structure = arens_products(algebra, space, config.tolerance)
    report = {
        "x_dim": space.basis.dim,
        "flags": {
            "submodule": space.submodule,
            "left_introverted": space.left_introverted,
            "right_introverted": space.right_introverted,
            "faithful": space.faithful,
        },
        "box": array_to_json(structure.box),
        "diamond": array_to_json(structure.diamond),
        "regular": structure.regular,
        "residuals": structure.residuals,
    }
    if config.map is not None:
        theta = load_map(config.map, default_source=algebra)
        extension = extend_involution(algebra, theta, space,
                                      config.tolerance, config.rank_threshold)
        report["extension"] = map_to_json(extension)
    return report


def _cmd_tim(config: RunConfig) -> dict:
    algebra = load_algebra(_need(config, "algebra"))
    space = _load_space(config, algebra)
    eps, rank = config.tolerance, config.rank_threshold
    if config.character is not None:
        element = load_element(config.character, algebra)
        characters = [verify_character(algebra, element.coords, eps)]
        possibly_incomplete = False
    else:
        search = find_characters(algebra, eps, rank, config.seed)
        characters = search.characters
        possibly_incomplete = search.possibly_incomplete

    star = None
    arens = None
    if config.map is not None:
        theta = load_map(config.map, default_source=algebra)
        arens = arens_products(algebra, space, eps)
        star = extend_involution(algebra, theta, space, eps, rank)

    results = []
    for phi in characters:
        means = tim_set(algebra, space, phi, eps, rank)
        entry = {
            "character": array_to_json(phi.coords),
            "particular": None if means.particular is None else array_to_json(means.particular),
            "homogeneous_basis": array_to_json(means.homogeneous),
            "affine_dim": means.affine_dim,
        }
        if star is not None:
            obstruction = tim_obstruction_check(algebra, space, phi, star, arens, eps, rank)
            entry["obstruction"] = {
                "vacuous": obstruction.vacuous,
                "unique": obstruction.unique,
                "chain_residuals": obstruction.chain_residuals,
            }
        results.append(entry)
    return {"characters": len(characters),
            "possibly_incomplete": possibly_incomplete,
            "means": results}


def _cmd_search(config: RunConfig) -> dict:
    algebra = load_algebra(_need(config, "algebra"))
    family = _need(config, "family")
    if family == "function":
        family_spec: dict = {"family": "function_indicator"}
    elif family == "group":
        params = read_json(_need(config, "params"))
        family_spec = {"family": "group_quotient", **params}
    else:
        raise UsageError(f"unsupported CLI family {family!r}; use 'function' or 'group' "
                         "(explicit pairs are available through the library API)")
    found = search_trivolutions(algebra, family_spec, config.tolerance, config.rank_threshold)
    return {"family": family_spec["family"], "count": len(found),
            "maps": [map_to_json(f) for f in found]}


def _cmd_suite(config: RunConfig) -> tuple[int, dict]:
    passed, report = run_suite(config.seed, config.tolerance, config.rank_threshold)
    return (0 if passed else 1), report


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit_code, report)."""
    handlers = {
        "check": _cmd_check,
        "decompose": _cmd_decompose,
        "factor": _cmd_factor,
        "hom": _cmd_hom,
        "extend": _cmd_extend,
        "spectra": _cmd_spectra,
        "arens": _cmd_arens,
        "tim": _cmd_tim,
        "search": _cmd_search,
    }
    try:
        if config.command == "suite":
            return _cmd_suite(config)
        if config.command not in handlers:
            raise UsageError(f"unknown command {config.command!r}")
        report = handlers[config.command](config)
        report["command"] = config.command
        return 0, report
    except UsageError as exc:
        return 2, {"command": config.command, "error": type(exc).__name__,
                   "message": str(exc)}
    except CertificationFailure as exc:
        report = exc.report()
        report["command"] = config.command
        return 1, report


def _render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(value):
                lines.append(f"{pad}  [{i}]")
                lines.append(_render_text(item, indent + 2))
        else:
            lines.append(f"{pad}{key}: {jsonable(value)}")
    return "\n".join(line for line in lines if line)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trivolve",
                                     description="workbench for involutions and trivolutions "
                                                 "on finite-dimensional complex algebras")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--algebra", help="algebra spec file (JSON)")
    parser.add_argument("--algebra2", help="second algebra spec file (hom)")
    parser.add_argument("--map", help="map spec file (JSON)")
    parser.add_argument("--map2", help="second map file (factor: kernel involution; hom: tau2)")
    parser.add_argument("--map3", help="third map file (hom: the homomorphism)")
    parser.add_argument("--element", help="element coordinates (file or inline JSON)")
    parser.add_argument("--character", help="character coordinates (file or inline JSON)")
    parser.add_argument("--dual-basis", dest="dual_basis",
                        help="dual subspace basis file (rows of functionals)")
    parser.add_argument("--family", help="search family: function | group")
    parser.add_argument("--params", help="family parameters (JSON file)")
    parser.add_argument("--tolerance", type=float, default=EPS)
    parser.add_argument("--rank-threshold", dest="rank_threshold", type=float, default=EPS_RANK)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", dest="output_format", choices=("text", "json"),
                        default="text")
    parser.add_argument("--out", help="write the report to a file instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    seed = int(os.environ.get("TRIVOLVE_SEED", args.seed))
    try:
        config = RunConfig(command=args.command, tolerance=args.tolerance,
                           rank_threshold=args.rank_threshold, seed=seed,
                           output_format=args.output_format, out=args.out,
                           algebra=args.algebra, algebra2=args.algebra2,
                           map=args.map, map2=args.map2, map3=args.map3,
                           element=args.element, family=args.family,
                           params=args.params, character=args.character,
                           dual_basis=args.dual_basis)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code, report = run(config)
    if config.output_format == "json":
        text = dumps_report(report)
    else:
        text = _render_text(jsonable(report)) + "\n"
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
