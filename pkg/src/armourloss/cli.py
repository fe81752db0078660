"""Command-line front-end: a thin client of the calculation service.

Verbs::

    armourloss eval DESIGN [--emit csv|json] [--out PATH]
    armourloss sweep DESIGN --param N --values 25:135:10 [--both-truncations]
    armourloss validate DESIGN
    armourloss serve [--host HOST] [--port PORT]

The design file format is documented in :mod:`armourloss.config`.  By
default the service layer runs in-process; ``--server URL`` sends the same
request to a running instance instead.  Exit codes: 0 success, 2 design
validation failure, 3 numerical failure.

Sweep value lists are separated by ``;`` (or ``,`` for real-valued
parameters); ``start:stop:step`` ranges are expanded inclusively, and
``mu_r`` values use the ``re,im`` pair convention, e.g.
``--values "150,-50;600,-350"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from . import __version__
from .config import parse_complex, parse_design
from .errors import ArmourLossError, ValidationError
from .service import api
from .service.models import (
    ComplexValue,
    DesignModel,
    EvalResponse,
    SweepRequest,
    SweepResponse,
    ValidateResponse,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

_RESULT_FIELDS = (
    "loss_w_per_m", "delta_s_re_va_per_m", "delta_s_im_va_per_m", "lambda2",
    "mu_phi_rel_re", "mu_phi_rel_im", "mu_z_rel_re", "mu_z_rel_im",
    "mu_e_rel_re", "mu_e_rel_im", "d_a_local_m", "tube_thickness_m",
    "m_used", "tail_bound_va_per_m")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _result_cells(res: EvalResponse | None) -> list[str]:
    if res is None:
        return [""] * len(_RESULT_FIELDS)
    loss, tube = res.loss, res.tube
    return [_fmt(v) for v in (
        loss.loss_w_per_m, loss.delta_s_va_per_m.re, loss.delta_s_va_per_m.im,
        loss.lambda2,
        tube.mu_phi_prime_rel.re, tube.mu_phi_prime_rel.im,
        tube.mu_z_prime_rel.re, tube.mu_z_prime_rel.im,
        loss.mu_e_rel.re, loss.mu_e_rel.im,
        tube.d_a_local_m, tube.thickness_m, loss.m_used, loss.tail_bound_va_per_m)]


def _header_comments(design: DesignModel, orders: list[int]) -> list[str]:
    return [
        f"# armourloss {__version__}",
        f"# solver.m_max = {design.solver.m_max}",
        f"# solver.transverse_order = {','.join(str(m) for m in orders)}",
        f"# solver.tail_tol = {design.solver.tail_tol!r}",
        f"# core.sequence = {design.core.sequence}",
    ]


def render_eval_csv(design: DesignModel, result: EvalResponse) -> str:
    buf = io.StringIO()
    for line in _header_comments(design, [design.solver.transverse_order]):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_RESULT_FIELDS)
    writer.writerow(_result_cells(result))
    return buf.getvalue()


def render_sweep_csv(design: DesignModel, response: SweepResponse,
                     orders: list[int]) -> str:
    buf = io.StringIO()
    for line in _header_comments(design, orders):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    suffixes = [""] if len(orders) == 1 else [f"_m{m}" for m in orders]
    header = [response.parameter]
    for s in suffixes:
        header += [f"{f}{s}" for f in _RESULT_FIELDS]
    header.append("error")
    writer.writerow(header)
    for row in response.rows:
        if isinstance(row.value, ComplexValue):
            value = f"{row.value.re!r},{row.value.im!r}"
        else:
            value = _fmt(row.value)
        cells = [value]
        for m in orders:
            cells += _result_cells(row.results.get(str(m)))
        cells.append(row.error or "")
        writer.writerow(cells)
    return buf.getvalue()


def parse_value_list(parameter: str, text: str) -> list:
    """Expand a sweep value list; ranges a:b:step are inclusive of b."""
    if parameter == "mu_r":
        return [parse_complex(item) for item in text.split(";") if item.strip()]
    sep = ";" if ";" in text else ","
    values: list = []
    for item in text.split(sep):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise ValidationError(f"range must be start:stop:step, got {item!r}")
            try:
                start, stop, step = (float(p) for p in parts)
            except ValueError as exc:
                raise ValidationError(f"bad range {item!r}") from exc
            if step <= 0 or stop < start:
                raise ValidationError(f"range {item!r} must ascend with positive step")
            v = start
            while v <= stop + 1e-12 * max(abs(stop), 1.0):
                values.append(v)
                v += step
        else:
            try:
                values.append(float(item))
            except ValueError as exc:
                raise ValidationError(f"bad value {item!r}") from exc
    if parameter == "N":
        values = [int(round(v)) for v in values]
    return values


def _load_design_model(args) -> DesignModel:
    with open(args.design, encoding="utf-8") as fh:
        design = parse_design(fh.read())
    model = DesignModel.from_design(design)
    if getattr(args, "m_max", None) is not None:
        model.solver.m_max = args.m_max
    if getattr(args, "transverse_order", None) is not None:
        model.solver.transverse_order = args.transverse_order
    return model


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class _RemoteError(ArmourLossError):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
    if response.status_code == 422:
        raise _RemoteError(str(response.json().get("detail")), EXIT_VALIDATION)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail")
        except Exception:
            detail = response.text
        raise _RemoteError(str(detail), EXIT_NUMERICAL)
    return response.json()


def _cmd_eval(args) -> int:
    model = _load_design_model(args)
    if args.server:
        result = EvalResponse.model_validate(
            _post(args.server, "/eval", model.model_dump(mode="json")))
    else:
        result = api.evaluate(model)
    if args.emit == "json":
        _emit(result.model_dump_json(indent=2) + "\n", args.out)
    else:
        _emit(render_eval_csv(model, result), args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    model = _load_design_model(args)
    values = parse_value_list(args.param, args.values)
    request = SweepRequest(
        design=model, parameter=args.param,
        values=([ComplexValue.wrap(v) for v in values]
                if args.param == "mu_r" else values),
        both_truncations=args.both_truncations)
    orders = api.sweep_orders(request)
    if args.server:
        response = SweepResponse.model_validate(
            _post(args.server, "/sweep", request.model_dump(mode="json")))
    else:
        response = api.sweep(request)
    if args.emit == "json":
        _emit(response.model_dump_json(indent=2) + "\n", args.out)
    else:
        _emit(render_sweep_csv(model, response, orders), args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    model = _load_design_model(args)
    if args.server:
        response = ValidateResponse.model_validate(
            _post(args.server, "/validate", model.model_dump(mode="json")))
    else:
        response = api.validate(model)
    lines = []
    for report in response.reports:
        lines.append(report.model_dump_json())
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if response.all_converged else EXIT_NUMERICAL


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="armourloss",
        description="Armour losses of three-core power cables")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("design", help="design file (flat key = value text)")
        p.add_argument("--m-max", type=int, default=None,
                       help="override harmonic truncation order")
        p.add_argument("--transverse-order", type=int, default=None,
                       help="override the transverse system truncation M")
        p.add_argument("--server", default=None,
                       help="send the request to a running service instead")
        if with_out:
            p.add_argument("--emit", choices=("csv", "json"), default="csv")
            p.add_argument("--out", default=None, help="write output to a file")

    p_eval = sub.add_parser("eval", help="evaluate one design")
    common(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter")
    common(p_sweep)
    p_sweep.add_argument("--param", required=True,
                         choices=("N", "p_a", "p_c", "mu_r", "I_c"))
    p_sweep.add_argument("--values", required=True,
                         help="';'-separated values, ranges start:stop:step")
    p_sweep.add_argument("--both-truncations", action="store_true",
                         help="report M = 1 and M = 17 side by side")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="run the oracle suite on a design")
    common(p_val, with_out=False)
    p_val.add_argument("--out", default=None, help="write report lines to a file")
    p_val.set_defaults(func=_cmd_validate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _RemoteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArmourLossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
