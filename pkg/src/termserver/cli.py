"""Operator command line: ingest, serve, user-add, diagram, synth.

Exit codes: 0 success, 1 data error, 2 usage error, 3 I/O or environment
failure.  Summaries go to stdout, per-row issues to stderr as
``file:line:kind:detail``.
"""

from __future__ import annotations

import argparse
import getpass
import os
import sys

from . import dotgen, indexfile, ingest, query, synth
from .digestauth import make_ha1, load_credentials
from .model import ModelError, UnknownConcept, build_store
from .server import ApiConfig, create_server

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _read(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def cmd_ingest(args) -> int:
    try:
        concepts_data = _read(args.concepts)
        descriptions_data = _read(args.descriptions)
        relationships_data = _read(args.relationships)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        bundle = ingest.parse_bundle(concepts_data, descriptions_data, relationships_data)
    except ingest.BadHeader as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    issues = bundle.issues + ingest.validate_bundle(bundle, check_digits=args.check_digits)
    for issue in issues:
        print(str(issue), file=sys.stderr)
    try:
        store = build_store(bundle.concepts, bundle.descriptions, bundle.relationships, args.isa)
    except ModelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    try:
        indexfile.save_index(store, args.out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    print(
        f"{len(bundle.concepts)} concepts, {len(bundle.descriptions)} descriptions, "
        f"{len(bundle.relationships)} relationships, {len(issues)} issues"
    )
    return EXIT_OK


def cmd_user_add(args) -> int:
    if ":" in args.user or not args.user:
        print(f"error: invalid username {args.user!r}", file=sys.stderr)
        return EXIT_USAGE
    if ":" in args.realm or not args.realm:
        print(f"error: invalid realm {args.realm!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.password_from_stdin:
        password = sys.stdin.readline().rstrip("\n")
    else:
        password = getpass.getpass("Password: ")
    if not password:
        print("error: empty password", file=sys.stderr)
        return EXIT_USAGE
    ha1 = make_ha1(args.user, args.realm, password)
    line = f"{args.user}:{args.realm}:{ha1}"
    try:
        existing = []
        if os.path.exists(args.credentials):
            with open(args.credentials, "r", encoding="utf-8") as f:
                existing = [ln.rstrip("\n") for ln in f if ln.strip()]
        kept = [ln for ln in existing if ln.split(":", 1)[0] != args.user]
        kept.append(line)
        with open(args.credentials, "w", encoding="utf-8") as f:
            f.write("\n".join(kept) + "\n")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    print(f"stored credential for {args.user}@{args.realm}")
    return EXIT_OK


def cmd_serve(args) -> int:
    try:
        config = ApiConfig(
            port=args.port,
            realm=args.realm,
            index_path=args.index,
            credentials_path=args.credentials,
            include_inactive=args.include_inactive,
            renderer_path=args.renderer,
            ui_dir=args.ui_dir,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        store = indexfile.load_index(args.index)
    except (OSError, indexfile.IndexFileError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        credentials = load_credentials(args.credentials)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        server = create_server(config, store, credentials, host=args.host)
    except OSError as e:
        print(f"error: cannot bind port {args.port}: {e}", file=sys.stderr)
        return EXIT_IO
    print(f"serving on {args.host}:{server.server_address[1]} (realm {args.realm!r})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
    return EXIT_OK


def cmd_diagram(args) -> int:
    try:
        store = indexfile.load_index(args.index)
    except (OSError, indexfile.IndexFileError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        n = query.neighborhood(store, args.id)
    except UnknownConcept as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    dot = dotgen.neighborhood_diagram(n)
    if args.format == "dot":
        payload = dot.text.encode("utf-8")
    else:
        if not args.renderer:
            print("error: --format svg requires --renderer", file=sys.stderr)
            return EXIT_USAGE
        try:
            payload = dotgen.render_external(dot, args.format, args.renderer)
        except (dotgen.RendererUnavailable, dotgen.RendererFailed) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_IO
    try:
        with open(args.out, "wb") as f:
            f.write(payload)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.concepts < 1:
        print("error: --concepts must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    release = synth.generate_release(args.concepts, args.seed)
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        with open(os.path.join(args.out_dir, "concepts.tsv"), "wb") as f:
            f.write(ingest.serialize_concepts(release.concepts))
        with open(os.path.join(args.out_dir, "descriptions.tsv"), "wb") as f:
            f.write(ingest.serialize_descriptions(release.descriptions))
        with open(os.path.join(args.out_dir, "relationships.tsv"), "wb") as f:
            f.write(ingest.serialize_relationships(release.relationships))
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    print(
        f"{len(release.concepts)} concepts, {len(release.descriptions)} descriptions, "
        f"{len(release.relationships)} relationships, isa {release.isa_type_id}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="termserver", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ingest", help="parse release files and build an index")
    p.add_argument("--concepts", required=True)
    p.add_argument("--descriptions", required=True)
    p.add_argument("--relationships", required=True)
    p.add_argument("--isa", required=True, type=int, help="hierarchy relationship type id")
    p.add_argument("--out", required=True, help="index file to write")
    p.add_argument("--check-digits", action="store_true", help="validate Verhoeff check digits")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("user-add", help="add or replace a Digest credential")
    p.add_argument("--credentials", required=True)
    p.add_argument("--user", required=True)
    p.add_argument("--realm", required=True)
    p.add_argument("--password-from-stdin", action="store_true",
                   help="read the password from stdin instead of prompting")
    p.set_defaults(func=cmd_user_add)

    p = sub.add_parser("serve", help="serve the HTTP API over an index")
    p.add_argument("--index", required=True)
    p.add_argument("--port", required=True, type=int)
    p.add_argument("--realm", required=True)
    p.add_argument("--credentials", required=True)
    p.add_argument("--renderer", default=None, help="path to a dot-compatible renderer")
    p.add_argument("--include-inactive", action="store_true")
    p.add_argument("--ui-dir", default=None, help="static assets served under /ui")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("diagram", help="write a concept diagram offline")
    p.add_argument("--index", required=True)
    p.add_argument("--id", required=True, type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("dot", "svg"), default="dot")
    p.add_argument("--renderer", default=None)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("synth", help="generate a deterministic synthetic release")
    p.add_argument("--concepts", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
