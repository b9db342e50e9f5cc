"""Command-line client for the primegaps service.

Every subcommand speaks HTTP to the service: against a remote server when
`--server` (or PRIMEGAPS_SERVER) is set, otherwise against an in-process
instance of the app via an ASGI transport, so no server needs to be
running for local use.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from typing import Any, Optional

import httpx

from .histogram import GapHistogram
from .runner import VERIFY_SUITES, WORKERS_ENV_VAR

SERVER_ENV_VAR = "PRIMEGAPS_SERVER"


class ServiceClient:
    """Minimal JSON-over-HTTP client; never computes anything itself."""

    def __init__(self, server: Optional[str] = None) -> None:
        self.server = server or os.environ.get(SERVER_ENV_VAR)

    def request(self, method: str, path: str, params: Optional[dict] = None, body: Optional[dict] = None) -> dict:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=None) as client:
                response = client.request(method, path, params=params, json=body)
        else:
            response = asyncio.run(self._in_process(method, path, params, body))
        payload = response.json()
        if response.status_code >= 400:
            detail = payload.get("detail", payload) if isinstance(payload, dict) else payload
            raise SystemExit(f"error ({response.status_code}): {detail}")
        return payload

    @staticmethod
    async def _in_process(method: str, path: str, params: Optional[dict], body: Optional[dict]) -> httpx.Response:
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://primegaps.local", timeout=None) as client:
            return await client.request(method, path, params=params, json=body)


def _emit(payload: Any) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _default_workers(args: argparse.Namespace) -> Optional[int]:
    if args.threads is not None:
        return args.threads
    env = os.environ.get(WORKERS_ENV_VAR)
    return max(1, int(env)) if env else None


def cmd_champions(args: argparse.Namespace) -> int:
    body = {
        "limit": args.limit,
        "checkpoints": _parse_int_list(args.checkpoints) if args.checkpoints else None,
        "workers": _default_workers(args),
        "segment_size": args.segment_size,
        "resume_path": args.resume,
        "max_segments": args.max_segments,
    }
    payload = ServiceClient(args.server).request("POST", "/champions", body=body)
    if args.out == "csv":
        hist = GapHistogram({d: c for d, c in payload["histogram"]}, payload["limit"])
        sys.stdout.write(hist.to_csv())
    else:
        _emit(payload["reports"])
    return 0


def cmd_series(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    if args.triple:
        d_prime, d = _parse_int_list(args.triple)
        params: dict[str, Any] = {"d": d, "d_prime": d_prime}
        if args.truncation:
            params["truncation"] = args.truncation
        payload = client.request("GET", "/series/triple", params=params)
    else:
        if args.d is None:
            raise SystemExit("series requires --d or --triple")
        params = {"d": args.d}
        if args.truncation:
            params["truncation"] = args.truncation
        payload = client.request("GET", "/series", params=params)
    _emit(payload)
    return 0


def cmd_constant(args: argparse.Namespace) -> int:
    params = {"truncation": args.truncation} if args.truncation else None
    _emit(ServiceClient(args.server).request("GET", "/constant", params=params))
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    params: dict[str, Any] = {"limit": args.limit, "d": args.d, "model": args.model}
    if args.observed:
        params["observed"] = True
        workers = _default_workers(args)
        if workers:
            params["workers"] = workers
    _emit(ServiceClient(args.server).request("GET", "/predict", params=params))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    body: dict[str, Any] = {"suite": args.suite}
    if args.k is not None:
        body["k"] = args.k
    if args.x is not None:
        body["x"] = args.x
    workers = _default_workers(args)
    if workers:
        body["workers"] = workers
    payload = ServiceClient(args.server).request("POST", "/verify", body=body)
    _emit(payload)
    return 0 if payload["passed"] else 1


def cmd_theta(args: argparse.Namespace) -> int:
    _emit(ServiceClient(args.server).request("GET", "/theta", params={"x": args.x}))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("primegaps.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primegaps", description=__doc__)
    parser.add_argument("--server", help=f"service URL (default: {SERVER_ENV_VAR} env var, else in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("champions", help="sieve to a limit and report jumping champions")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--checkpoints", help="comma-separated report points (default: powers of ten)")
    p.add_argument("--threads", type=int, help=f"worker count (default: {WORKERS_ENV_VAR} env var)")
    p.add_argument("--segment-size", type=int, help="odd candidates per sieve segment")
    p.add_argument("--resume", help="checkpoint file to create/continue")
    p.add_argument("--max-segments", type=int, help="stop after this many segments (resumable)")
    p.add_argument("--out", choices=("json", "csv"), default="json", help="reports as JSON or final histogram as CSV")
    p.set_defaults(func=cmd_champions)

    p = sub.add_parser("series", help="pair or triple density constant")
    p.add_argument("--d", type=int, help="gap size for the pair constant")
    p.add_argument("--triple", help="D_PRIME,D for the triple constant")
    p.add_argument("--truncation", type=int, help="truncation prime for the Euler product")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("constant", help="twin prime constant with its truncation error")
    p.add_argument("--truncation", type=int)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("predict", help="model gap count, optionally with the observed count")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--model", choices=("asymptotic", "integral"), default="asymptotic")
    p.add_argument("--observed", action="store_true", help="also sieve and report the observed count")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="run a verification suite; exit 0 iff it passes")
    p.add_argument("--suite", choices=VERIFY_SUITES, required=True)
    p.add_argument("--k", type=int, help="dominance scan index (lemma1 suite)")
    p.add_argument("--x", type=int, help="bound override (sandwich/bounds suites)")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theta", help="locate x among the primorials by value and by log-weight")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
