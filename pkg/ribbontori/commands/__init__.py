# commands/__init__.py
# Modul pentru subcomenzile liniei de comanda
# Fiecare grup isi inregistreaza subcomenzile prin register(subparsers)

from . import invariant_commands, conjugacy_commands, surface_commands, geodesic_commands

COMMAND_GROUPS = [invariant_commands, conjugacy_commands, surface_commands, geodesic_commands]

__all__ = ['COMMAND_GROUPS', 'invariant_commands', 'conjugacy_commands', 'surface_commands',
           'geodesic_commands']
