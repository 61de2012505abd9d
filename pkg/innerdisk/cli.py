#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""InnerDisk command line: coefficients, disk evaluation, boundary recovery, chains and classification.

CSV columns written by `recover --output`: theta, rho, u (one row per ladder step;
u is the conjugate boundary value v when --conjugate is given).
"""

from __future__ import annotations

import argparse
import logging
import platform
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional

from .core.boundary import abel_sum, grid_error, radial_recover, recover_conjugate, required_order
from .core.catalog import catalog_get, catalog_list, piecewise_spec
from .core.chain import navigate, start_position
from .core.classify import classify_points
from .core.coeff_io import (
    coefficients_payload, dumps, load_piecewise, read_coefficients, write_coefficients,
    write_recovery_csv,
)
from .core.constants import APP_NAME, APP_VERSION, AUTO_ORDER_QUADRATURE_CAP, DEFAULT_ORDER, LOGGER_NAME
from .core.data_models import (
    ClosedFormInner, DiskPoint, FourierCoefficients, RealFunctionSpec, TaylorCoefficients,
)
from .core.errors import InnerDiskError
from .core.fourier import compute_coefficients, exact_coefficients, mean_absolute, verify_bounds
from .core.inner import closed_form_eval, conjugate, evaluate, from_fourier, get_closed_form
from .core.settings import Settings, load_settings

logger = logging.getLogger(LOGGER_NAME)

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


class UsageError(InnerDiskError):
    """Flag combination that argparse cannot reject on its own."""


@dataclass
class Source:
    """Resolved input function: catalog/piecewise spec or a coefficient file"""
    fc: FourierCoefficients
    tc: TaylorCoefficients
    spec: Optional[RealFunctionSpec] = None
    closed_form: Optional[ClosedFormInner] = None


def configure_logging(level: str, log_file: Optional[str] = None) -> List[logging.Handler]:
    """Attach stderr (and optional file) handlers to the package logger; returns them for cleanup."""
    formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        try:
            handlers.append(logging.FileHandler(log_file, mode="w", encoding="utf-8"))
        except OSError as e:
            # только консоль
            print(f"Предупреждение: не удалось создать лог-файл {log_file}: {e}", file=sys.stderr)

    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
    return handlers


# =============================================================================
# ARGUMENTS
# =============================================================================

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Flat JSON settings file (tolerances, ladder, max_steps)")
    common.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    common.add_argument("--log-file", help="Also write the log to this file")
    common.add_argument("--workers", type=int, help="Worker threads for batch jobs")
    return common


def _source_parser() -> argparse.ArgumentParser:
    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--function", help="Catalog entry name (see `list`)")
    group.add_argument("--piecewise", type=Path, help="Piecewise-polynomial JSON definition")
    group.add_argument("--coeffs", type=Path, help="Coefficient JSON file (Fourier or Taylor form)")
    source.add_argument("--n", type=int,
                        help=f"Truncation order N (default: smallest N passing the truncation check "
                             f"at the largest rho used, at least {DEFAULT_ORDER})")
    source.add_argument("--exact", action="store_true",
                        help="Use the catalog's closed-form Fourier series instead of quadrature")
    return source


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="innerdisk", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    common, source = _common_parser(), _source_parser()

    sub.add_parser("list", parents=[common], help="Catalog entries as JSON")

    p = sub.add_parser("coeffs", parents=[common, source], help="Fourier and Taylor coefficients")
    p.add_argument("--output", type=Path, help="Also write the coefficient file here")

    p = sub.add_parser("eval", parents=[common, source], help="w = u + iv at a disk point")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)

    p = sub.add_parser("recover", parents=[common, source], help="Radial limit u(rho -> 1, theta)",
                       description="CSV columns: theta, rho, u")
    p.add_argument("--theta", type=float, action="append", help="Boundary point; repeatable")
    p.add_argument("--ladder", help="Ladder exponents j (rho = 1 - 2^-j), e.g. 4..14")
    p.add_argument("--conjugate", action="store_true", help="Recover the conjugate function v")
    p.add_argument("--abel", action="store_true", help="Sum the real Fourier series instead of Re w")
    p.add_argument("--grid-size", type=int, help="Report grid L1/Linf error at --rho instead")
    p.add_argument("--rho", type=float, help="Radius for --grid-size")
    p.add_argument("--exclusion", type=float, default=0.0, help="Radius excluded around singular points")
    p.add_argument("--output", type=Path, help="CSV path for the per-rho estimates")

    p = sub.add_parser("chain", parents=[common, source], help="Walk the integral-differential chain")
    p.add_argument("--steps", type=int, required=True, help="+n derivatives, -n primitives")
    p.add_argument("--output", type=Path, help="Also write the coefficient file here")

    p = sub.add_parser("classify", parents=[common, source], help="Soft/hard classification of boundary points")
    p.add_argument("--theta", type=float, action="append", required=True, help="Boundary point; repeatable")
    p.add_argument("--ladder", help="Probe ladder exponents, e.g. 4..10")
    p.add_argument("--max-steps", type=int, help="Derivative/primitive steps to try")

    p = sub.add_parser("conjugate", parents=[common, source], help="Coefficients of -i w")
    p.add_argument("--output", type=Path, help="Also write the coefficient file here")
    return parser


# =============================================================================
# COMMANDS
# =============================================================================

def _default_order(spec: RealFunctionSpec, args, settings: Settings, rho_max: Optional[float]) -> int:
    """N для проверки усечения на rho_max; без rho_max - DEFAULT_ORDER"""
    if rho_max is None or not (0.0 <= rho_max < 1.0):
        return DEFAULT_ORDER
    bound = 4.0 * mean_absolute(spec, settings.quad)
    order = max(DEFAULT_ORDER, required_order(bound, rho_max, settings.threshold))
    if not args.exact and order > AUTO_ORDER_QUADRATURE_CAP:
        logger.warning(
            "%s: для rho=%.6g нужен N=%d; квадратура ограничена N=%d (задайте --n или --exact)",
            spec.name, rho_max, order, AUTO_ORDER_QUADRATURE_CAP,
        )
        order = AUTO_ORDER_QUADRATURE_CAP
    logger.info("%s: N=%d по проверке усечения при rho=%.6g", spec.name, order, rho_max)
    return order


def _load_source(args, settings: Settings, rho_max: Optional[float] = None) -> Source:
    if args.coeffs is not None:
        fc, tc = read_coefficients(args.coeffs)
        return Source(fc=fc, tc=tc)

    if args.n is not None and args.n < 1:
        raise UsageError("--n должно быть >= 1")
    if args.function is not None:
        spec = catalog_get(args.function)
    else:
        spec = piecewise_spec(load_piecewise(args.piecewise))

    order = args.n if args.n is not None else _default_order(spec, args, settings, rho_max)
    fc = exact_coefficients(spec, order, settings.quad) if args.exact \
        else compute_coefficients(spec, order, settings.quad)
    closed_form = get_closed_form(spec.known_closed_form) if spec.known_closed_form else None
    return Source(fc=fc, tc=from_fourier(fc), spec=spec, closed_form=closed_form)


def _single_or_list(items: List[Any]) -> Any:
    return items[0] if len(items) == 1 else items


def cmd_list(args, settings: Settings) -> Any:
    return [spec.summary() for spec in catalog_list()]


def cmd_coeffs(args, settings: Settings) -> Any:
    src = _load_source(args, settings)
    report = verify_bounds(src.fc)
    if args.output:
        write_coefficients(args.output, src.fc)
    payload = coefficients_payload(src.fc)
    payload["achieved_error"] = src.fc.achieved_error
    payload["best_effort"] = src.fc.best_effort
    payload["bounds"] = {
        "alpha_ratio": report.alpha_ratio,
        "beta_ratio": report.beta_ratio,
        "violated": report.violated,
    }
    return payload


def cmd_eval(args, settings: Settings) -> Any:
    src = _load_source(args, settings, rho_max=args.rho)
    point = DiskPoint(args.rho, args.theta)
    w = evaluate(src.tc, point)
    result = {"rho": point.rho, "theta": point.theta, "N": src.tc.N, "u": w.real, "v": w.imag}
    if src.closed_form is not None:
        exact = closed_form_eval(src.closed_form, point)
        result["closed_form"] = src.closed_form.name
        result["u_exact"] = exact.real
        result["v_exact"] = exact.imag
    return result


def cmd_recover(args, settings: Settings) -> Any:
    if args.grid_size is not None:
        if args.rho is None:
            raise UsageError("--grid-size требует --rho")
        rho_max = args.rho
    else:
        if not args.theta:
            raise UsageError("recover требует --theta или --grid-size")
        if args.abel and args.conjugate:
            raise UsageError("--abel и --conjugate несовместимы")
        rho_max = settings.recovery_ladder().rhos[-1]
    src = _load_source(args, settings, rho_max)

    if args.grid_size is not None:
        if src.spec is None:
            raise UsageError("--grid-size требует --function или --piecewise")
        err = grid_error(src.spec, src.tc, args.rho, args.grid_size, args.exclusion, settings.workers)
        return {"rho": args.rho, "grid_size": args.grid_size, "exclusion": args.exclusion,
                "L1": err.L1, "Linf": err.Linf, "points": err.points}

    ladder = settings.recovery_ladder()
    results = []
    for theta in args.theta:
        if args.abel:
            results.append(abel_sum(src.fc, theta, ladder, settings.threshold))
        elif args.conjugate:
            results.append(recover_conjugate(src.tc, theta, ladder, settings.threshold))
        else:
            results.append(radial_recover(src.tc, theta, ladder, settings.threshold))
    if args.output:
        write_recovery_csv(args.output, results)
    return _single_or_list([r.summary() for r in results])


def cmd_chain(args, settings: Settings) -> Any:
    src = _load_source(args, settings)
    link = navigate(start_position(src.tc, settings.max_offset), args.steps)
    name = src.fc.name or link.provenance
    if args.output:
        write_coefficients(args.output, link, name=name)
    return coefficients_payload(link, name=name)


def cmd_classify(args, settings: Settings) -> Any:
    src = _load_source(args, settings, settings.probe_ladder().rhos[-1])
    reports = classify_points(
        src.tc, args.theta, settings.probe_ladder(), settings.max_steps, src.closed_form,
        max_workers=settings.workers,
        threshold=settings.threshold,
        constant_fraction=settings.constant_fraction,
        log_power_ratio=settings.log_power_ratio,
    )
    return _single_or_list([r.to_dict() for r in reports])


def cmd_conjugate(args, settings: Settings) -> Any:
    src = _load_source(args, settings)
    tc = conjugate(src.tc)
    name = f"conj {src.fc.name}".strip()
    if args.output:
        write_coefficients(args.output, tc, name=name)
    return coefficients_payload(tc, name=name)


COMMANDS = {
    "list": cmd_list,
    "coeffs": cmd_coeffs,
    "eval": cmd_eval,
    "recover": cmd_recover,
    "chain": cmd_chain,
    "classify": cmd_classify,
    "conjugate": cmd_conjugate,
}


def _settings_from(args) -> Settings:
    settings = load_settings(args.config)
    return settings.with_overrides(
        workers=args.workers,
        ladder=getattr(args, "ladder", None) if args.command == "recover" else None,
        classify_ladder=getattr(args, "ladder", None) if args.command == "classify" else None,
        max_steps=getattr(args, "max_steps", None),
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = configure_logging(args.log_level, args.log_file)
    logger.debug("%s %s | Python %s | %s", APP_NAME, APP_VERSION, platform.python_version(), platform.platform())
    try:
        settings = _settings_from(args)
        logger.debug("%s: %s", args.command, settings)
        result = COMMANDS[args.command](args, settings)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (InnerDiskError, ValueError) as exc:
        logger.error("%s: %s", args.command, exc)
        data = exc.to_dict() if isinstance(exc, InnerDiskError) else {"error": type(exc).__name__, "message": str(exc)}
        print(dumps(data))
        return 1
    except MemoryError:
        logger.error("%s: недостаточно памяти", args.command)
        print(dumps({"error": "MemoryError", "message": "Недостаточно памяти; уменьшите --n"}))
        return 1
    finally:
        for handler in handlers:
            logger.removeHandler(handler)
            handler.close()

    print(dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
