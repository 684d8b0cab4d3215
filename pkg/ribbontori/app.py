# app.py
# Punctul de intrare al liniei de comanda
# Construieste parserul cu toate subcomenzile si ruleaza comanda ceruta.
#
# Codurile de iesire:
# - 0: decizie pozitiva / raport produs
# - 2: decizie negativa (ex: campuri neechivalente), cu raport JSON
# - 1: eroare de intrare sau de calcul, cu {"error": ...} pe stderr

import argparse
import json
import logging
import sys

from .config import Config
from .errors import RibbonError

logger = logging.getLogger(__name__)


class RibbonArgumentParser(argparse.ArgumentParser):
    """Parser care semnaleaza erorile de utilizare cu codul 1 (codul 2 inseamna "nu")."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: eroare: {message}\n")


def create_app(config_class=Config):
    """
    Factory pentru aplicatia de linie de comanda.

    Args:
        config_class: Clasa de configurare

    Returns:
        argparse.ArgumentParser cu toate subcomenzile inregistrate
    """
    parser = RibbonArgumentParser(
        prog=config_class.TOOL_NAME,
        description='Clasificarea torilor lorentzieni cu camp Killing (panglici f(y) dx^2 + 2 dx dy)',
    )
    parser.add_argument('--version', action='version', version=config_class.TOOL_VERSION)
    parser.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING (implicit din config)')
    parser.add_argument('-o', '--output', default=None, help='fisierul raportului JSON (implicit stdout)')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    # Inregistram grupurile de subcomenzi
    from .commands import COMMAND_GROUPS
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    parser.set_defaults(config=config_class)
    return parser


def run(argv=None, config_class=Config):
    """
    Ruleaza o subcomanda.

    Returns:
        int: codul de iesire (0 / 2 / 1)
    """
    parser = create_app(config_class)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    config_class.init_logging(args.log_level)
    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        error = e.to_dict() if isinstance(e, RibbonError) else {'type': type(e).__name__, 'message': str(e)}
        logger.debug("Comanda %s a esuat", args.command, exc_info=True)
        sys.stderr.write(json.dumps({'error': error}, sort_keys=True) + '\n')
        return 1


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
