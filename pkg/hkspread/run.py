import logging
import time

from .exceptions import ParseError, SpreadError
from .helpers import Config, get_version
from .identities import (
    check_base_change,
    check_corollary_vanishing,
    check_lemma33_additivity,
    check_product_identity,
    check_self_product,
    check_spread_base_change,
)
from .ideal import Ideal, ideal_colon, maximal_ideal
from .independence import colon_criterion_diagnostic, star_independence_diagnostic
from .length import ehk_estimate, length_quotient
from .parser import format_command, parse_script
from .poly import FrobeniusExponent
from .report import Report
from .spread import frobenius_spread, star_spread_estimate, star_spread_hk_difference


class Session:
    """The shared context of one script: its ring, bound ideals and config."""

    def __init__(self, script, config):
        self.script = script
        self.ring = script.ring
        self.config = config
        self._ideals = {}

    def ideal(self, name):
        if name not in self._ideals:
            if name in self.script.ideals:
                self._ideals[name] = Ideal(self.ring, self.script.ideals[name])
            elif name == "m":
                self._ideals[name] = maximal_ideal(self.ring)
            else:
                raise SpreadError(f"unknown ideal '{name}'")
        return self._ideals[name]

    def e_max(self, command):
        return command.options.get("e_max", self.config.e_max)

    def q0_exponent(self, command):
        q0 = command.options.get("q0", 1)
        return FrobeniusExponent.from_q(self.ring.characteristic, q0).e

    def qs(self, command):
        """The q values of an identity command; by default p^e for e = 1..e_max."""
        if "q" in command.options:
            return command.options["q"]
        p = self.ring.characteristic
        return [p ** e for e in range(1, self.e_max(command) + 1)]

    def a(self, command):
        return self.ideal(command.options.get("a", "m"))


def run_gb(session, command):
    (name,) = command.names
    gb = session.ideal(name).groebner()
    return "ok", {"ideal": name, "basis": [str(g) for g in gb], "size": len(gb)}


def run_length(session, command):
    (name,) = command.names
    I = session.ideal(name)
    length = length_quotient(I)
    return "ok", {"ideal": name, "length": length.to_json(), "dimension": I.dimension()}


def run_colon(session, command):
    first, second = command.names
    colon = ideal_colon(session.ideal(first), session.ideal(second))
    return "ok", {"ideal": first, "by": second, "colon": [str(g) for g in colon.groebner()]}


def run_ehk(session, command):
    (name,) = command.names
    estimate = ehk_estimate(
        session.ideal(name), session.e_max(command), command.options.get("method")
    )
    return "ok", dict(ideal=name, **estimate.to_dict())


def _spread(session, command, estimator):
    (name,) = command.names
    report = estimator(
        session.ideal(name),
        session.a(command),
        session.q0_exponent(command),
        session.e_max(command),
        session.config.q0_cap,
    )
    return ("ok" if report.stabilized else "failed"), report.to_dict()


def run_spread(session, command):
    return _spread(session, command, star_spread_estimate)


def run_spread_hk(session, command):
    return _spread(session, command, star_spread_hk_difference)


def run_identity(session, command):
    kind = command.kind
    names = command.names
    config = session.config
    e_max = session.e_max(command)
    if kind == "product":
        report = check_product_identity(
            session.ideal(names[0]),
            session.ideal(names[1]),
            command.options["ell"],
            session.qs(command),
            e_max,
            config.tolerance,
        )
    elif kind == "self":
        report = check_self_product(
            session.ideal(names[0]),
            session.qs(command),
            session.q0_exponent(command),
            e_max,
            config.q0_cap,
            config.tolerance,
        )
    elif kind == "lemma33":
        report = check_lemma33_additivity(
            session.ideal(names[0]),
            command.options["z"],
            session.a(command),
            session.q0_exponent(command),
            e_max,
            session.qs(command),
            config.tolerance,
        )
    elif kind == "basechange":
        report = check_base_change(
            session.ring,
            session.ideal(names[0]),
            command.options["s"],
            session.qs(command),
            e_max,
            config.tolerance,
        )
    elif kind == "corollary":
        report = check_corollary_vanishing(
            session.ring,
            session.ideal(names[0]),
            session.q0_exponent(command),
            e_max,
            session.qs(command),
            config.tolerance,
        )
    elif kind == "spreadbc":
        report = check_spread_base_change(
            session.ideal(names[0]),
            command.options["s"],
            session.q0_exponent(command),
            e_max,
            config.q0_cap,
        )
    else:
        raise SpreadError(f"unknown identity '{kind}'")
    return ("ok" if report.passed else "failed"), report.to_dict()


def run_independent(session, command):
    (name,) = command.names
    report = star_independence_diagnostic(
        session.ideal(name).generators, session.q0_exponent(command), session.e_max(command)
    )
    return "ok", report.to_dict()


def run_criterion(session, command):
    (name,) = command.names
    report = colon_criterion_diagnostic(
        session.ideal(name),
        command.options["x"],
        session.q0_exponent(command),
        session.e_max(command),
    )
    return "ok", report.to_dict()


def run_fspread(session, command):
    (name,) = command.names
    report = frobenius_spread(session.ideal(name), session.e_max(command))
    return "ok", report.to_dict()


HANDLERS = {
    "gb": run_gb,
    "length": run_length,
    "colon": run_colon,
    "ehk": run_ehk,
    "spread": run_spread,
    "spread_hk": run_spread_hk,
    "identity": run_identity,
    "independent": run_independent,
    "criterion": run_criterion,
    "fspread": run_fspread,
}


def run_script(script, config=None):
    """Run the commands of a script in order. A command that raises a SpreadError is recorded
    with status "error" and the session continues."""
    config = config or Config()
    session = Session(script, config)
    report = Report(version=get_version(), config=config.to_dict())
    for command in script.commands:
        echo = format_command(command)
        logging.info(f"running: {echo}")
        start = time.perf_counter()
        entry = {"command": echo, "line": command.line}
        try:
            status, result = HANDLERS[command.name](session, command)
            entry["status"] = status
            entry["result"] = result
        except SpreadError as e:
            logging.error(f"line {command.line}: {e}")
            entry["status"] = "error"
            entry["error"] = str(e)
        report.results.append(entry)
        report.timing.append({"command": echo, "seconds": round(time.perf_counter() - start, 6)})
    return report


def run_text(text, config=None):
    """Parse and run a script. A parse error gives a report with no results and the error's
    position."""
    config = config or Config()
    try:
        script = parse_script(text, order=config.order, limits=config.limits())
    except ParseError as e:
        logging.error(str(e))
        return Report(
            version=get_version(),
            config=config.to_dict(),
            error={"message": e.message, "line": e.line, "column": e.column},
        )
    return run_script(script, config)
