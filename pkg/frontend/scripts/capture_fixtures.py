"""Regenerate the JSON fixtures under frontend/fixtures from a live service.

Starts the policy server in-process on an ephemeral port, fetches each
policy document and every alive-position state answer over real HTTP, and
writes the responses verbatim.  Run from the repository root:

    python3 frontend/scripts/capture_fixtures.py
"""

from __future__ import annotations

import json
import threading
import urllib.request
from pathlib import Path

from riskgame import (
    GameParams,
    PolicyService,
    alive_positions,
    make_server,
    solve_iterative,
)

TARGETS = (2, 3, 4)
FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fetch(url: str) -> bytes:
    with urllib.request.urlopen(url) as resp:
        return resp.read()


def main() -> None:
    service = PolicyService({n: solve_iterative(GameParams(n))
                             for n in TARGETS})
    server = make_server(service, host="127.0.0.1", port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_port}"
    try:
        for n in TARGETS:
            doc = fetch(f"{base}/api/v1/policy/{n}")
            (FIXTURES / f"policy_n{n}.json").write_bytes(doc)
            answers = {}
            for pos in alive_positions(GameParams(n)):
                raw = fetch(f"{base}/api/v1/state?n={n}&a={pos.a}"
                            f"&b={pos.b}&c={pos.c}")
                answers[f"{pos.a},{pos.b},{pos.c}"] = json.loads(raw)
            text = json.dumps(answers, sort_keys=True, indent=2,
                              ensure_ascii=False) + "\n"
            (FIXTURES / f"answers_n{n}.json").write_text(text)
            print(f"n={n}: policy document + {len(answers)} state answers")
    finally:
        server.shutdown()
        server.server_close()


if __name__ == "__main__":
    main()
