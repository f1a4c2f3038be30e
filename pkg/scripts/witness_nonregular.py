from __future__ import annotations

import argparse
import sys
from pathlib import Path

# Ensure repo root is on sys.path when running as a script.
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from cli.document import load_document
from core.config import load_config
from core.errors import WKKitError
from oracle.acceptor import as_acceptor
from oracle.regularity import distinguishing_prefixes
from wk.automaton import format_word


def witness(path: Path, max_len: int, max_states: int) -> int:
    config = load_config()
    acceptor = as_acceptor(load_document(path).machine, config.engine, name=str(path))
    prefixes = distinguishing_prefixes(acceptor, max_len)
    print(f"{len(prefixes)} pairwise distinguishable prefixes (words up to length {max_len}):")
    for prefix in prefixes:
        print(f"  {format_word(prefix)}")
    if len(prefixes) > max_states:
        print(f"no complete DFA with <= {max_states} states matches {path.name} up to length {max_len}")
        return 0
    print(f"a DFA with <= {max_states} states is not ruled out")
    return 1


def main() -> None:
    parser = argparse.ArgumentParser(description="Bounded non-regularity certificate for a machine file.")
    parser.add_argument("file", type=Path)
    parser.add_argument("--max-len", type=int, default=12, help="Longest word checked.")
    parser.add_argument("--max-states", type=int, default=6, help="DFA size to rule out.")
    args = parser.parse_args()
    try:
        sys.exit(witness(args.file, args.max_len, args.max_states))
    except WKKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(2)


if __name__ == "__main__":
    main()
