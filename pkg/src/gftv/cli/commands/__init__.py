"""子命令聚合：每个模块提供 register(subparsers, parent)。"""

import argparse

from gftv.cli.commands import bounds, corpus, jack, oracle, search, sweep, valence, verify

COMMANDS = (bounds, oracle, verify, sweep, search, valence, jack, corpus)


def register_all(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    for module in COMMANDS:
        module.register(subparsers, parent)
