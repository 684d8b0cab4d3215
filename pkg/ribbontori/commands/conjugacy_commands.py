# commands/conjugacy_commands.py
# Subcomenzi pentru difeomorfismele explicite
# linearize, conjugacy

import numpy as np

from ..services import ConjugacyService
from .common import add_function_args, function_from_args, emit, select_zero, write_csv, function_service
from .invariant_commands import circle_field_service

conjugacy_service = ConjugacyService(circle_field_service=circle_field_service)


def linearize(args):
    """
    Linearizarea la zeroul cu indexul --zero-index.

    Raport: harta (zero, latura, panta in zero) si reziduul max|phi' f - lam phi| / max|lam phi|
    pe grila de export.
    """
    f = function_from_args(args)
    zero = select_zero(f, args.zero_index)
    if args.side == 'both':
        chart = conjugacy_service.linearize_domino(f, zero)
    else:
        chart = conjugacy_service.linearize_at(f, zero, args.side)
    lo, hi = chart.domain
    margin = 0.01 * (hi - lo)
    rows = chart.table(lo + margin, hi - margin, args.resolution)
    ys = np.array([r[0] for r in rows])
    values = np.array([r[1] for r in rows])
    slopes = np.array([r[2] for r in rows])
    lam_phi = zero.lam * values
    residual = float(np.max(np.abs(slopes * f.values(ys) - lam_phi))) / float(np.max(np.abs(lam_phi)))
    if args.csv:
        write_csv(args.csv, ['y', 'phi', 'dphi'], rows)
    result = chart.to_dict()
    result['residual'] = residual
    return emit(args, result)


def conjugacy(args):
    """Construieste conjugarea X_{f,P} -> X_{g,Q} din certificatul gasit de equiv."""
    X = circle_field_service.field(function_from_args(args))
    Y = circle_field_service.field(function_from_args(args, 'g'))
    cert = circle_field_service.equivalent(X, Y, allow_scale=not args.no_scale,
                                           allow_reversal=args.allow_reversal)
    if cert is None:
        return emit(args, {'equivalent': False, 'conjugacy': None}, positive=False)
    phi = conjugacy_service.build_conjugacy(X, Y, cert)
    if args.csv:
        lo, hi = phi.domain
        write_csv(args.csv, ['y', 'phi', 'dphi'], phi.table(lo, hi, args.resolution))
    return emit(args, {'equivalent': True, 'conjugacy': phi})


def register(subparsers):
    """Inregistreaza subcomenzile de conjugare."""
    parser = subparsers.add_parser('linearize', help='linearizarea la un zero simplu')
    add_function_args(parser)
    parser.add_argument('--zero-index', type=int, default=0)
    parser.add_argument('--side', choices=('left', 'right', 'both'), default='right')
    parser.add_argument('--resolution', type=int, default=1001)
    parser.add_argument('--csv', default=None, help='fisier CSV cu (y, phi, dphi)')
    parser.set_defaults(handler=linearize)

    parser = subparsers.add_parser('conjugacy', help='conjugarea explicita a doua campuri')
    add_function_args(parser)
    add_function_args(parser, 'g')
    parser.add_argument('--allow-reversal', action='store_true')
    parser.add_argument('--no-scale', action='store_true')
    parser.add_argument('--resolution', type=int, default=1001)
    parser.add_argument('--csv', default=None)
    parser.set_defaults(handler=conjugacy)
