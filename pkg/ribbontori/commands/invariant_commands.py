# commands/invariant_commands.py
# Subcomenzi pentru invariantii campurilor pe cerc
# invariants, mu, equiv, cover-conformal, mehidi, match-cp, mu-corpus

from ..errors import NotMehidi, NoBracket
from ..services import CircleFieldService
from .common import add_function_args, function_from_args, emit, parse_floats, function_service

circle_field_service = CircleFieldService(function_service=function_service)


# ==================== HANDLERE ====================

def invariants(args):
    """
    Lista de invarianti a campului scale * X_{f,P}.

    Raport:
    {
        "n": int, "lambdas": [...], "mu": float,
        "period": float, "fundamental_period": float,
        "zeros": [{"z", "lambda", "simple"}, ...]
    }
    """
    f = function_from_args(args)
    X = circle_field_service.field(f, scale=args.scale)
    result = circle_field_service.invariant_list(X).to_dict()
    result['zeros'] = [z.to_dict() for z in circle_field_service.field_zeros(X)]
    return emit(args, result)


def mu(args):
    """Invariantul mu, optional comparat cu oracolul prin limita in eps."""
    f = function_from_args(args)
    X = circle_field_service.field(f, scale=args.scale)
    result = {'mu': circle_field_service.mu(X)}
    if args.bruteforce:
        eps = parse_floats(args.eps) if args.eps else None
        result['mu_bruteforce'] = circle_field_service.mu_bruteforce(X, eps)
        result['difference'] = abs(result['mu'] - result['mu_bruteforce'])
    return emit(args, result)


def equiv(args):
    """Decide daca X_{f,P} si X_{g,Q} sunt difeomorfe (eventual pana la scala)."""
    X = circle_field_service.field(function_from_args(args))
    Y = circle_field_service.field(function_from_args(args, 'g'))
    cert = circle_field_service.equivalent(X, Y, allow_scale=not args.no_scale,
                                           allow_reversal=args.allow_reversal)
    return emit(args, {'equivalent': cert is not None, 'certificate': cert}, positive=cert is not None)


def cover_conformal(args):
    """Cauta acoperirile finite X_{f,P} ~ a X_{g,Q} (criteriul de K-conformalitate)."""
    f, g = function_from_args(args), function_from_args(args, 'g')
    kmax = args.kmax or args.config.KMAX
    found = circle_field_service.finite_cover_conformal(f, g, kmax, args.allow_reversal)
    if found is None:
        return emit(args, {'conformal': False, 'kmax': kmax}, positive=False)
    P, Q, cert = found
    return emit(args, {'conformal': True, 'P': P, 'Q': Q, 'a': cert.a, 'certificate': cert})


def mehidi(args):
    """Conditia lui Mehidi (toate |lambda| egale)."""
    f = function_from_args(args)
    lam = circle_field_service.is_mehidi(f, args.tol)
    result = {'mehidi': lam is not None, 'lambda': lam}
    result.update(circle_field_service.multiplier_spread(f))
    return emit(args, result, positive=lam is not None)


def match_cp(args):
    """Parametrii (b, k, a) ai modelului Clifton-Pohl difeomorf cu X_{f,P}."""
    f = function_from_args(args)
    try:
        match = circle_field_service.match_to_cp(f)
    except (NotMehidi, NoBracket) as e:
        return emit(args, {'match': None, 'reason': e.to_dict()}, positive=False)
    if match is None:
        return emit(args, {'match': None, 'reason': 'validarea listelor a esuat'}, positive=False)
    b, k, a = match
    return emit(args, {'b': b, 'k': k, 'a': a})


def mu_corpus(args):
    """Acordul dintre mu si oracol pe un corpus aleator reproductibil."""
    eps = parse_floats(args.eps) if args.eps else None
    result = circle_field_service.mu_corpus(args.count, args.seed, args.degree, args.jobs, eps)
    return emit(args, result, positive=result['max_difference'] <= args.tol)


# ==================== INREGISTRARE ====================

def register(subparsers):
    """Inregistreaza subcomenzile de invarianti."""
    parser = subparsers.add_parser('invariants', help='lista (n, lambdas, mu)')
    add_function_args(parser)
    parser.add_argument('--scale', type=float, default=1.0)
    parser.set_defaults(handler=invariants)

    parser = subparsers.add_parser('mu', help='invariantul mu')
    add_function_args(parser)
    parser.add_argument('--scale', type=float, default=1.0)
    parser.add_argument('--bruteforce', action='store_true', help='compara cu oracolul in eps')
    parser.add_argument('--eps', default=None, help='sirul eps descrescator, ex: "1e-2,1e-3,1e-4,1e-5"')
    parser.set_defaults(handler=mu)

    parser = subparsers.add_parser('equiv', help='echivalenta a doua campuri')
    add_function_args(parser)
    add_function_args(parser, 'g')
    parser.add_argument('--allow-reversal', action='store_true')
    parser.add_argument('--no-scale', action='store_true')
    parser.set_defaults(handler=equiv)

    parser = subparsers.add_parser('cover-conformal', help='acoperiri finite conforme')
    add_function_args(parser)
    add_function_args(parser, 'g')
    parser.add_argument('--kmax', type=int, default=None, help='implicit Kmax din configurare')
    parser.add_argument('--allow-reversal', action='store_true')
    parser.set_defaults(handler=cover_conformal)

    parser = subparsers.add_parser('mehidi', help='conditia lui Mehidi')
    add_function_args(parser)
    parser.add_argument('--tol', type=float, default=None)
    parser.set_defaults(handler=mehidi)

    parser = subparsers.add_parser('match-cp', help='potrivirea in familia Clifton-Pohl')
    add_function_args(parser)
    parser.set_defaults(handler=match_cp)

    parser = subparsers.add_parser('mu-corpus', help='mu contra oracolului pe un corpus aleator')
    parser.add_argument('--count', type=int, default=20)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--degree', type=int, default=4)
    parser.add_argument('--jobs', type=int, default=1)
    parser.add_argument('--eps', default=None)
    parser.add_argument('--tol', type=float, default=1e-6)
    parser.set_defaults(handler=mu_corpus)
