"""Run the HTTP service.

    python scripts/serve.py --config docs/config.example.yaml

Provider modes come from the config file (gateway.mode / search.mode):
live needs API keys in the environment, replay serves recorded fixtures,
offline-deterministic needs nothing.
"""

import argparse

import uvicorn

from claimcheck.config import load_config
from claimcheck.service import create_app


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--config", help="YAML config file path")
    parser.add_argument("--host", default=None)
    parser.add_argument("--port", type=int, default=None)
    args = parser.parse_args()

    config = load_config(args.config) if args.config else load_config()
    host = args.host or config.service.host
    port = args.port or config.service.port
    uvicorn.run(create_app(config), host=host, port=port)


if __name__ == "__main__":
    main()
