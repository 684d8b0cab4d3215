# commands/common.py
# Functii comune pentru subcomenzi: argumentele functiilor, plicul JSON al
# rapoartelor si exportul CSV.

import csv
import json
import math
import sys

import numpy as np

from ..config import Config
from ..errors import NoZeros, OutOfRange
from ..services import FunctionService

# Codurile de iesire: decizie pozitiva / eroare de intrare / decizie negativa
EXIT_YES = 0
EXIT_ERROR = 1
EXIT_NO = 2

function_service = FunctionService()


def add_function_args(parser, name='f', required=True):
    """Adauga --f/--period (sau --g/--g-period) si fereastra pentru modul linie."""
    period_flag = '--period' if name == 'f' else f'--{name}-period'
    parser.add_argument(f'--{name}', required=required, help='expresia functiei (ex: "sin(y)")')
    parser.add_argument(period_flag, dest=f'{name}_period', default=None,
                        help='perioada declarata (ex: "2*pi"); fara perioada se lucreaza pe o fereastra')
    parser.add_argument(f'--{name}-window' if name != 'f' else '--window', dest=f'{name}_window',
                        default=None, help='fereastra "lo,hi" pentru modul linie')


def function_from_args(args, name='f'):
    """Construieste PeriodicFunction din argumentele --f/--period/--window."""
    window = getattr(args, f'{name}_window', None)
    if window is not None:
        window = tuple(float(part) for part in window.split(','))
    return function_service.make_function(getattr(args, name), getattr(args, f'{name}_period'), window)


def select_zero(f, index):
    """Zeroul cu indexul dat (ordinea certificata a zerourilor)."""
    zeros = function_service.find_zeros(f)
    if not zeros:
        raise NoZeros(f"{f!r} nu are zerouri")
    if not 0 <= index < len(zeros):
        raise OutOfRange(f"Indexul zeroului {index} in afara [0, {len(zeros)})")
    return zeros[index]


def parse_floats(text):
    return [float(part) for part in text.split(',')]


# ==================== SERIALIZARE ====================

def to_jsonable(value):
    """
    Converteste rezultatul intr-o structura JSON.
    Infinitul si NaN devin siruri ('inf', '-inf', 'nan').
    """
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return 'nan' if math.isnan(value) else ('inf' if value > 0 else '-inf')
    return value


def envelope(command, result, config=Config):
    """Plicul comun al rapoartelor: versiune, conventii, tolerante efective."""
    return {
        'tool': config.TOOL_NAME,
        'version': config.TOOL_VERSION,
        'command': command,
        'conventions': to_jsonable(dict(config.CONVENTIONS)),
        'tolerances': to_jsonable(config.tolerances()),
        'result': to_jsonable(result),
    }


def format_float(value):
    """Real cu 17 cifre semnificative (exact la citire pentru binary64)."""
    if not math.isfinite(value):
        raise ValueError(f"Valoare nefinita in raport: {value!r}")
    return format(value, '#.17g')


def dumps(value, indent=2, level=0):
    """
    Serializare JSON cu cheile sortate si indentare, ca json.dumps(sort_keys=True, indent=2),
    dar cu realii scrisi prin format_float.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    inner = '\n' + ' ' * (indent * (level + 1))
    outer = '\n' + ' ' * (indent * level)
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [json.dumps(k) + ': ' + dumps(value[k], indent, level + 1) for k in sorted(value)]
        return '{' + inner + (',' + inner).join(items) + outer + '}'
    if not value:
        return '[]'
    items = [dumps(v, indent, level + 1) for v in value]
    return '[' + inner + (',' + inner).join(items) + outer + ']'


def emit(args, result, positive=True):
    """
    Scrie raportul JSON (stdout sau -o) si intoarce codul de iesire.

    Returns:
        EXIT_YES pentru o decizie pozitiva, EXIT_NO pentru una negativa
    """
    config = getattr(args, 'config', Config)
    text = dumps(envelope(args.command, result, config))
    if args.output:
        with open(args.output, 'w') as handle:
            handle.write(text + '\n')
    else:
        sys.stdout.write(text + '\n')
    return EXIT_YES if positive else EXIT_NO


def write_csv(path, header, rows):
    """Exporta randuri numerice in CSV (repr pentru valorile reale)."""
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])
