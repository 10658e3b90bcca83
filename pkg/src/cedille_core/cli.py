"""Batch driver: check, type, erase, and normalize definitions in .cdc files.

Exit codes: 0 all accepted, 1 type error, 2 parse error, 3 usage or I/O
error, 4 fuel exhausted.  Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys

from .erase import erase
from .norm import DEFAULT_FUEL, FuelExhausted, nf
from .parser import ParseError, parse_module
from .printer import print_term
from .typecheck import ErrorCode, TypeCheckError, check_definitions, module_context

EXIT_OK = 0
EXIT_TYPE_ERROR = 1
EXIT_PARSE_ERROR = 2
EXIT_USAGE = 3
EXIT_FUEL = 4


def _record(machine: bool, name: str, status: str, payload: str):
    if machine:
        print(f"{name}\t{status}\t{payload}")
    else:
        print(f"{name} {status} {payload}".rstrip())


def _read(path: str) -> str | None:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        return None


def _load_module(path: str, machine: bool):
    text = _read(path)
    if text is None:
        return None, EXIT_USAGE
    try:
        return parse_module(text, path), EXIT_OK
    except ParseError as e:
        _record(machine, e.definition or "-", "error",
                f"{e.code} {path}:{e.line}:{e.col} {e.message}")
        print(f"{path}:{e.line}:{e.col}: {e.message}", file=sys.stderr)
        return None, EXIT_PARSE_ERROR


def _check(args) -> int:
    status = EXIT_OK
    for path in args.files:
        module, code = _load_module(path, args.machine)
        if module is None:
            status = status or code
            continue
        try:
            for j in check_definitions(module, args.fuel, args.strict_intersections):
                _record(args.machine, j.name, "ok", print_term(j.type))
        except TypeCheckError as e:
            _record(args.machine, e.definition or "-", "error",
                    f"{e.code.value} {e.message}")
            print(f"{path}: {e.definition}: {e}", file=sys.stderr)
            failure = EXIT_FUEL if e.code is ErrorCode.FUEL_EXHAUSTED else EXIT_TYPE_ERROR
            status = status or failure
    return status


def _find(module, name: str | None, path: str):
    if name is None:
        if len(module.definitions) == 1:
            return module.definitions[0]
        print(f"error: {path} has {len(module.definitions)} definitions; "
              "give a name", file=sys.stderr)
        return None
    for d in module.definitions:
        # Accept kind names with or without the '$' sigil (shells eat '$').
        if d.name == name or d.name == "$" + name:
            return d
    print(f"error: no definition named {name!r} in {path}", file=sys.stderr)
    return None


def _type(args) -> int:
    module, code = _load_module(args.file, machine=False)
    if module is None:
        return code
    target = _find(module, args.name, args.file)
    if target is None:
        return EXIT_USAGE
    try:
        for j in check_definitions(module, args.fuel):
            if j.name == target.name:
                print(print_term(j.type))
                return EXIT_OK
    except TypeCheckError as e:
        print(f"{args.file}: {e.definition}: {e}", file=sys.stderr)
        return EXIT_FUEL if e.code is ErrorCode.FUEL_EXHAUSTED else EXIT_TYPE_ERROR
    return EXIT_USAGE


def _erase(args) -> int:
    module, code = _load_module(args.file, machine=False)
    if module is None:
        return code
    target = _find(module, args.name, args.file)
    if target is None:
        return EXIT_USAGE
    print(print_term(erase(target.definiens)))
    return EXIT_OK


def _normalize(args) -> int:
    module, code = _load_module(args.file, machine=False)
    if module is None:
        return code
    target = _find(module, args.name, args.file)
    if target is None:
        return EXIT_USAGE
    ctx = module_context(module, upto=target.name)
    try:
        print(print_term(nf(ctx, target.definiens, args.fuel)))
    except FuelExhausted:
        print(f"error: fuel exhausted normalizing {target.name!r}",
              file=sys.stderr)
        return EXIT_FUEL
    return EXIT_OK


def _name_and_file(sub):
    sub.add_argument("args", nargs="+", metavar="NAME FILE",
                     help="definition name (optional for single-definition "
                          "modules) and input file")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cedcore", description="Check .cdc modules.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_check = subs.add_parser("check", help="type-check every definition")
    p_check.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p_check.add_argument("--strict-intersections", action="store_true")
    p_check.add_argument("--machine", action="store_true",
                         help="tab-separated, one record per definition")
    p_check.add_argument("files", nargs="+", metavar="FILE")

    p_type = subs.add_parser("type", help="print a definition's synthesized type")
    _name_and_file(p_type)

    p_erase = subs.add_parser("erase", help="print a definition's erasure")
    _name_and_file(p_erase)

    p_norm = subs.add_parser("normalize", help="print a definition's normal form")
    p_norm.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    _name_and_file(p_norm)

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.command == "check":
        if args.fuel <= 0:
            print("error: --fuel must be positive", file=sys.stderr)
            return EXIT_USAGE
        return _check(args)

    if len(args.args) == 1:
        args.name, args.file = None, args.args[0]
    elif len(args.args) == 2:
        args.name, args.file = args.args
    else:
        print("error: expected NAME FILE", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "type":
        args.fuel = DEFAULT_FUEL
        return _type(args)
    if args.command == "erase":
        return _erase(args)
    if args.fuel <= 0:
        print("error: --fuel must be positive", file=sys.stderr)
        return EXIT_USAGE
    return _normalize(args)


if __name__ == "__main__":
    sys.exit(main())
