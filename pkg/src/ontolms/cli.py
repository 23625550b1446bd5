"""Command-line entry point.

Subcommands:
    serve   run the HTTP service over an ontology + credential file
    query   evaluate a class-expression query against an ontology file
    save    parse an ontology file and rewrite it in canonical form
    seed    write the bundled seed ontology (and optionally credentials)
"""

import argparse
import sys
import threading

from . import dlquery, persistence
from .auth import CredentialStore, seed_credentials
from .errors import LmsError
from .quiz import load_quiz_bank
from .service import LmsService, default_questionnaire, default_quiz_bank
from .vark import load_questionnaire


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LmsError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontolms",
        description="Ontology-backed learning management engine")
    sub = parser.add_subparsers(required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--ontology", required=True,
                       help="ontology document to load and persist on shutdown")
    serve.add_argument("--credentials", required=True,
                       help="credential file (userid role salt hash per line)")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--public-read", action="store_true",
                       help="serve GET /query and GET /export without a token")
    serve.add_argument("--questionnaire", default=None,
                       help="survey document (default: bundled 8 questions)")
    serve.add_argument("--quiz-bank", default=None,
                       help="quiz bank document (default: bundled)")
    serve.add_argument("--token-ttl", type=float, default=3600.0,
                       help="seconds a login token stays valid")
    serve.set_defaults(func=_cmd_serve)

    query = sub.add_parser("query", help="evaluate a query offline")
    query.add_argument("--ontology", required=True)
    query.add_argument("text", help='class expression, e.g. "Student and isPursuing value OperatingSystemCourse"')
    query.set_defaults(func=_cmd_query)

    save = sub.add_parser("save", help="rewrite an ontology file canonically")
    save.add_argument("--ontology", required=True)
    save.add_argument("--out", default=None,
                      help="target file (default: rewrite in place)")
    save.set_defaults(func=_cmd_save)

    seed = sub.add_parser("seed", help="write the bundled seed corpus")
    seed.add_argument("--out", required=True, help="ontology file to write")
    seed.add_argument("--credentials-out", default=None,
                      help="also write a credential file for the seed users; "
                           "generated passwords are printed once")
    seed.set_defaults(func=_cmd_seed)
    return parser


def _cmd_serve(args) -> int:
    store = persistence.load(args.ontology)
    credentials = CredentialStore(args.credentials)
    questionnaire = default_questionnaire()
    if args.questionnaire:
        with open(args.questionnaire, encoding="utf-8") as fh:
            questionnaire = load_questionnaire(fh.read())
    quiz_bank = default_quiz_bank()
    if args.quiz_bank:
        with open(args.quiz_bank, encoding="utf-8") as fh:
            quiz_bank = load_quiz_bank(fh.read())
    service = LmsService(
        store, credentials,
        questionnaire=questionnaire, quiz_bank=quiz_bank,
        host=args.host, port=args.port, public_read=args.public_read,
        token_ttl=args.token_ttl, ontology_path=args.ontology)
    service.start()
    # flush so supervisors reading a pipe see the port before the first request
    print(f"serving on {service.url} (Ctrl-C to stop and persist)", flush=True)
    try:
        threading.Event().wait()
    except KeyboardInterrupt:
        pass
    finally:
        service.stop()
        print(f"saved {args.ontology}")
    return 0


def _cmd_query(args) -> int:
    store = persistence.load(args.ontology)
    expr = dlquery.parse_query(args.text)
    for individual in dlquery.evaluate(expr, store):
        print(individual)
    return 0


def _cmd_save(args) -> int:
    store = persistence.load(args.ontology)
    persistence.save(store, args.out or args.ontology)
    return 0


def _cmd_seed(args) -> int:
    store = persistence.load_seed()
    persistence.save(store, args.out)
    print(f"wrote {args.out}")
    if args.credentials_out:
        credentials = CredentialStore(args.credentials_out)
        passwords = seed_credentials(store, credentials)
        print(f"wrote {args.credentials_out}")
        for userid, password in sorted(passwords.items()):
            print(f"{userid} {password}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
