"""Command-line client for the simulation runners.

Each subcommand builds the same request model the HTTP service accepts,
executes it (in-process by default, or against a running service via
``--server``), and writes the canonical artifacts.  Exit codes: 0 success,
2 invalid flags or config, 3 boundary overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

import numpy as np
from pydantic import BaseModel, ValidationError

from . import __version__
from .artifacts import (
    collide_csv,
    distribution_csv,
    hom_json,
    lg_csv,
    walk_sidecar_json,
    widthscan_csv,
)
from .runners import (
    run_collide,
    run_electric,
    run_hom,
    run_lg,
    run_walk,
    run_widthscan,
)
from .schemas import (
    CollideRequest,
    CollideResponse,
    ElectricRequest,
    ElectricResponse,
    HomRequest,
    HomResponse,
    LGRequest,
    LGResponse,
    WalkRequest,
    WalkResponse,
    WidthScanRequest,
    WidthScanResponse,
)
from .states import BoundaryOverflowError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BOUNDARY = 3


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _sidecar_path(out: str) -> str:
    return (out[:-4] if out.endswith(".csv") else out) + ".json"


def _write_walk(args: argparse.Namespace, response: WalkResponse) -> None:
    csv_text = distribution_csv(response)
    sidecar = walk_sidecar_json(response)
    _write_text(args.out, csv_text)
    _write_text(_sidecar_path(args.out), sidecar)


def _write_electric(args: argparse.Namespace, response: ElectricResponse) -> None:
    _write_text(args.out, distribution_csv(response))


def _write_widthscan(args: argparse.Namespace, response: WidthScanResponse) -> None:
    _write_text(args.out, widthscan_csv(response))


def _write_lg(args: argparse.Namespace, response: LGResponse) -> None:
    _write_text(args.out, lg_csv(response))


def _write_hom(args: argparse.Namespace, response: HomResponse) -> None:
    _write_text(args.out, hom_json(response))


def _write_collide(args: argparse.Namespace, response: CollideResponse) -> None:
    _write_text(args.out, collide_csv(response))


class _Command:
    def __init__(
        self,
        request_model: type[BaseModel],
        response_model: type[BaseModel],
        runner: Callable,
        path: str,
        writer: Callable,
        fields: list[str],
    ) -> None:
        self.request_model = request_model
        self.response_model = response_model
        self.runner = runner
        self.path = path
        self.writer = writer
        self.fields = fields


_COMMANDS = {
    "walk": _Command(
        WalkRequest,
        WalkResponse,
        run_walk,
        "/walk",
        _write_walk,
        ["steps", "theta", "alpha", "beta", "p_spin", "p_pos", "trajectories", "half_width", "seed"],
    ),
    "widthscan": _Command(
        WidthScanRequest,
        WidthScanResponse,
        run_widthscan,
        "/widthscan",
        _write_widthscan,
        ["max_steps", "theta", "p_spin", "seed"],
    ),
    "electric": _Command(
        ElectricRequest,
        ElectricResponse,
        run_electric,
        "/electric",
        _write_electric,
        ["steps", "phi", "theta", "half_width", "seed"],
    ),
    "lg": _Command(
        LGRequest,
        LGResponse,
        run_lg,
        "/lg",
        _write_lg,
        ["thetas", "mode", "p_spin", "p_pos", "seed"],
    ),
    "hom": _Command(
        HomRequest,
        HomResponse,
        run_hom,
        "/hom",
        _write_hom,
        ["overlap", "events", "survival", "parity_eff", "seed"],
    ),
    "collide": _Command(
        CollideRequest,
        CollideResponse,
        run_collide,
        "/collide",
        _write_collide,
        ["p", "pcoll", "events", "p_known", "seed"],
    ),
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", required=True, help="output file path")
    sub.add_argument("--seed", type=int, default=None, help="64-bit unsigned seed")
    sub.add_argument(
        "--config", default=None, help="JSON file with request fields; flags override"
    )
    sub.add_argument(
        "--server", default=None, help="base URL of a running atomwalk service"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atomwalk", description="lattice walk experiment runner (angles in radians)"
    )
    parser.add_argument("--version", action="version", version=f"atomwalk {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    walk = commands.add_parser("walk", help="position distribution after n steps")
    walk.add_argument("--steps", type=int, default=None, required=False)
    walk.add_argument("--theta", type=float, default=None)
    walk.add_argument("--alpha", type=float, default=None)
    walk.add_argument("--beta", type=float, default=None)
    walk.add_argument("--p-spin", dest="p_spin", type=float, default=None)
    walk.add_argument("--p-pos", dest="p_pos", type=float, default=None)
    walk.add_argument("--trajectories", type=int, default=None)
    walk.add_argument("--half-width", dest="half_width", type=int, default=None)
    _add_common(walk)

    widthscan = commands.add_parser("widthscan", help="RMS width vs step count")
    widthscan.add_argument("--max-steps", dest="max_steps", type=int, default=None)
    widthscan.add_argument("--theta", type=float, default=None)
    widthscan.add_argument("--p-spin", dest="p_spin", type=float, default=None)
    _add_common(widthscan)

    electric = commands.add_parser("electric", help="walk with a per-site phase gradient")
    electric.add_argument("--steps", type=int, default=None)
    electric.add_argument("--phi", type=float, default=None)
    electric.add_argument("--theta", type=float, default=None)
    electric.add_argument("--half-width", dest="half_width", type=int, default=None)
    _add_common(electric)

    lg = commands.add_parser("lg", help="temporal-correlation scan over coin angles")
    lg.add_argument(
        "--theta",
        dest="thetas",
        type=float,
        action="append",
        default=None,
        help="coin angle; repeatable",
    )
    lg.add_argument(
        "--theta-range",
        dest="theta_range",
        nargs=3,
        type=float,
        metavar=("START", "STOP", "COUNT"),
        default=None,
        help="evenly spaced angles appended to --theta values",
    )
    lg.add_argument("--mode", choices=["negative", "projective", "none"], default=None)
    lg.add_argument("--p-spin", dest="p_spin", type=float, default=None)
    lg.add_argument("--p-pos", dest="p_pos", type=float, default=None)
    _add_common(lg)

    hom = commands.add_parser("hom", help="two-atom interference detection Monte Carlo")
    hom.add_argument("--overlap", type=float, default=None)
    hom.add_argument("--events", type=int, default=None)
    hom.add_argument("--survival", type=float, default=None)
    hom.add_argument("--parity-eff", dest="parity_eff", type=float, default=None)
    _add_common(hom)

    collide = commands.add_parser("collide", help="pair-loss sampling and re-estimation")
    collide.add_argument("--p", type=float, default=None)
    collide.add_argument(
        "--pcoll", type=float, action="append", default=None, help="repeatable"
    )
    collide.add_argument("--events", type=int, default=None)
    collide.add_argument("--p-known", dest="p_known", type=float, default=None)
    _add_common(collide)

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _build_request(command: _Command, args: argparse.Namespace) -> BaseModel:
    merged = _load_config(args.config)
    for field in command.fields:
        value = getattr(args, field, None)
        if value is not None:
            merged[field] = value
    if args.command == "lg" and args.theta_range is not None:
        start, stop, count = args.theta_range
        merged.setdefault("thetas", [])
        merged["thetas"] = list(merged["thetas"]) + [
            float(t) for t in np.linspace(start, stop, int(count))
        ]
    return command.request_model(**merged)


def _execute(command: _Command, request: BaseModel, server: str | None) -> BaseModel:
    if server is None:
        return command.runner(request)
    import httpx

    reply = httpx.post(
        server.rstrip("/") + command.path, json=request.model_dump(), timeout=600.0
    )
    if reply.status_code == 400 and "boundary overflow" in reply.text:
        raise BoundaryOverflowError(reply.json().get("detail", reply.text))
    reply.raise_for_status()
    return command.response_model.model_validate(reply.json())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    command = _COMMANDS[args.command]
    try:
        request = _build_request(command, args)
        response = _execute(command, request, args.server)
        command.writer(args, response)
    except BoundaryOverflowError as exc:
        print(f"atomwalk: boundary overflow: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except (ValidationError, ValueError, OSError) as exc:
        print(f"atomwalk: invalid request: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
