import logging
import sys

from argparse import ArgumentParser
from .exceptions import SpreadError
from .helpers import ORDERS, get_config, get_version, set_logging
from .report import to_csv, to_xlsx
from .run import run_text

run_msg = "Run a session script and write its report"


def usage():
    return f"""hkspread [command] [options] <arguments>
commands:
  help     Print this message
  run      {run_msg}
  version  Print the hkspread version"""


def main():
    parser = ArgumentParser(usage=usage())
    global_parser = ArgumentParser(add_help=False)
    global_parser.add_argument("-v", "--verbose", help="Print logging", action="store_true")
    subparsers = parser.add_subparsers(dest="cmd")

    sp = subparsers.add_parser("help", parents=[global_parser])
    sp.set_defaults(func=run_help)
    sp = subparsers.add_parser("version", parents=[global_parser])
    sp.set_defaults(func=version)

    # ------------------------------- run -------------------------------
    sp = subparsers.add_parser(
        "run",
        parents=[global_parser],
        description=run_msg,
        usage="hkspread run SCRIPT [-f FORMAT -o OUTPUT --order ORDER]",
    )
    sp.add_argument("script", help="Path to the session script, or - to read standard input")
    sp.add_argument(
        "-f", "--format", default="json", choices=["json", "csv", "xlsx"], help="Report format"
    )
    sp.add_argument("-o", "--output", help="Write the report to this path instead of stdout")
    sp.add_argument("-c", "--config", help="Key/Value TSV with session settings")
    sp.add_argument("--order", choices=ORDERS, help="Monomial order")
    sp.add_argument("--max-gb-steps", type=int, help="Reduction step guard")
    sp.add_argument("--max-basis-size", type=int, help="Groebner basis size guard")
    sp.add_argument("--max-exponent", type=int, help="Exponent guard")
    sp.add_argument("--e-max", type=int, help="Default largest Frobenius exponent sampled")
    sp.set_defaults(func=run_run)

    args = parser.parse_args()
    if not hasattr(args, "func"):
        print(usage())
        print("ERROR: a command is required")
        sys.exit(1)
    args.func(args)


def run(
    script_path,
    fmt="json",
    output=None,
    config_path=None,
    verbose=False,
    **overrides,
):
    """Run the script at script_path ('-' for stdin) and write the report. Return True when every
    command succeeded and every identity check passed."""
    set_logging(verbose)
    config = get_config(config_path, **overrides)
    if script_path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(script_path, "r", encoding="utf-8") as f:
                text = f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise SpreadError(f"Unable to read script {script_path}: {e}")
    report = run_text(text, config)

    if fmt == "xlsx":
        if not output:
            raise SpreadError("--format xlsx needs an output path (-o)")
        to_xlsx(report, output)
        return report.ok
    content = to_csv(report) if fmt == "csv" else report.to_json()
    if output:
        with open(output, "w") as f:
            f.write(content)
    else:
        sys.stdout.write(content)
    return report.ok


def run_help(args):
    """Wrapper for help function."""
    print(usage())


def run_run(args):
    """Wrapper for run function."""
    try:
        success = run(
            args.script,
            fmt=args.format,
            output=args.output,
            config_path=args.config,
            verbose=args.verbose,
            order=args.order,
            max_gb_steps=args.max_gb_steps,
            max_basis_size=args.max_basis_size,
            max_exponent=args.max_exponent,
            e_max=args.e_max,
        )
    except SpreadError as e:
        logging.critical(str(e))
        sys.exit(1)
    if not success:
        sys.exit(1)


def version(args):
    """Print hkspread version information."""
    v = get_version()
    print(f"hkspread version {v}")


if __name__ == "__main__":
    main()
