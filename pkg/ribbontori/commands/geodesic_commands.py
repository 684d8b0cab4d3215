# commands/geodesic_commands.py
# Subcomenzi pentru geodezice
# geodesic, conjugate, lightlike

from ..models.geodesic import GeodesicState
from ..services import GeodesicService
from .common import add_function_args, function_from_args, emit, select_zero, write_csv, function_service

geodesic_service = GeodesicService(function_service=function_service)


def geodesic(args):
    """Integreaza geodezica din --state pana la --t-max; CSV (t, x, y, vx, vy, clairaut, energy)."""
    m = geodesic_service.metric(function_from_args(args))
    trajectory = geodesic_service.integrate_geodesic(m, GeodesicState.parse(args.state), args.t_max,
                                                     args.tol)
    if args.csv:
        write_csv(args.csv, ['t', 'x', 'y', 'vx', 'vy', 'clairaut', 'energy'], trajectory.rows())
    return emit(args, trajectory)


def conjugate(args):
    """
    Primul punct conjugat de-a lungul geodezicei din --state.
    Cu --samples N: raport exploratoriu pe N geodezice aleatoare.
    """
    m = geodesic_service.metric(function_from_args(args))
    if args.samples:
        report = geodesic_service.sample_conjugate_points(m, args.samples, args.seed, args.t_max)
        return emit(args, report)
    state = GeodesicState.parse(args.state)
    t_star = geodesic_service.first_conjugate_point(m, state, args.t_max)
    if args.csv:
        rows = geodesic_service.jacobi_field(m, state, args.t_max)
        write_csv(args.csv, ['t', 'J_x', 'J_y', 'normal_component'], rows)
    return emit(args, {'state': state, 't_max': args.t_max, 'conjugate_point': t_star},
                positive=t_star is not None)


def lightlike(args):
    """Orizontul geodezicei luminoase inchise y = z."""
    f = function_from_args(args)
    report = geodesic_service.lightlike_incompleteness(geodesic_service.metric(f),
                                                       select_zero(f, args.zero_index), args.vx0)
    return emit(args, report)


def register(subparsers):
    """Inregistreaza subcomenzile pentru geodezice."""
    parser = subparsers.add_parser('geodesic', help='integrarea unei geodezice')
    add_function_args(parser)
    parser.add_argument('--state', required=True, help='"x,y,vx,vy"')
    parser.add_argument('--t-max', type=float, default=10.0)
    parser.add_argument('--tol', type=float, default=None)
    parser.add_argument('--csv', default=None)
    parser.set_defaults(handler=geodesic)

    parser = subparsers.add_parser('conjugate', help='puncte conjugate')
    add_function_args(parser)
    parser.add_argument('--state', default='0,0,1,0.5')
    parser.add_argument('--t-max', type=float, default=30.0)
    parser.add_argument('--samples', type=int, default=0)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--csv', default=None, help='fisier CSV cu campul Jacobi')
    parser.set_defaults(handler=conjugate)

    parser = subparsers.add_parser('lightlike', help='incompletitudinea geodezicelor luminoase')
    add_function_args(parser)
    parser.add_argument('--zero-index', type=int, default=0)
    parser.add_argument('--vx0', type=float, default=1.0)
    parser.set_defaults(handler=lightlike)
