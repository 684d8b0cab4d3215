# commands/surface_commands.py
# Subcomenzi pentru suprafata universala si tori
# strips, word-nf, charts, saddle, embed, torus-classify

import json

from ..models.surface import CoxeterWord
from ..services import SurfaceService
from .common import add_function_args, function_from_args, emit, select_zero, write_csv
from .conjugacy_commands import conjugacy_service

surface_service = SurfaceService(conjugacy_service=conjugacy_service)


def strips(args):
    decomposition = surface_service.strip_decomposition(function_from_args(args))
    return emit(args, decomposition)


def word_nf(args):
    """Forma normala a cuvantului --word (ex: "0,1,0,1")."""
    decomposition = surface_service.strip_decomposition(function_from_args(args))
    word = CoxeterWord.parse(args.word)
    normal = surface_service.word_normal_form(word, decomposition)
    return emit(args, {'word': word.to_list(), 'normal_form': normal.to_list(), 'length': len(normal)})


def charts(args):
    """Cuvintele in forma normala pana la raza --radius (copiile panglicii)."""
    decomposition = surface_service.strip_decomposition(function_from_args(args))
    words = surface_service.enumerate_charts(decomposition, args.radius)
    return emit(args, {'radius': args.radius, 'count': len(words),
                       'words': [w.to_list() for w in words]})


def saddle(args):
    f = function_from_args(args)
    profile = surface_service.saddle_profile(f, select_zero(f, args.zero_index))
    if args.csv:
        write_csv(args.csv, ['w', 'theta'], profile.rows())
    return emit(args, profile)


def embed(args):
    """Scufundarea domino-ului in saua simetrica si reziduul metricii trase inapoi."""
    f = function_from_args(args)
    embedding = surface_service.embed_domino(f, select_zero(f, args.zero_index))
    result = embedding.to_dict()
    result['metric_residual'] = surface_service.embedding_residual(embedding, args.samples, args.seed)
    return emit(args, result)


def _load_torus(path):
    with open(path) as handle:
        return surface_service.torus_from_dict(json.load(handle))


def torus_classify(args):
    """
    Cu --torus2: raportul de K-conformalitate intre cei doi tori.
    Fara --torus2: parametrul b al torului Reeb (conditia Mehidi).
    """
    torus = _load_torus(args.torus)
    if args.torus2:
        report = surface_service.tori_K_conformal(torus, _load_torus(args.torus2),
                                                  args.kmax or args.config.KMAX, args.allow_reversal)
        return emit(args, report, positive=report['success'])
    report = surface_service.classify_reeb_mehidi(torus)
    report['invariant'] = surface_service.circle_field_service.invariant_list(
        surface_service.torus_invariant(torus)).to_dict()
    return emit(args, report, positive=report['success'])


def register(subparsers):
    """Inregistreaza subcomenzile pentru suprafete si tori."""
    parser = subparsers.add_parser('strips', help='benzile si perechile contigue')
    add_function_args(parser)
    parser.set_defaults(handler=strips)

    parser = subparsers.add_parser('word-nf', help='forma normala in grupul Coxeter')
    add_function_args(parser)
    parser.add_argument('--word', required=True, help='etichete separate prin virgula; "e" pentru neutru')
    parser.set_defaults(handler=word_nf)

    parser = subparsers.add_parser('charts', help='enumerarea hartilor pana la o raza')
    add_function_args(parser)
    parser.add_argument('--radius', type=int, default=2)
    parser.set_defaults(handler=charts)

    parser = subparsers.add_parser('saddle', help='profilul selei simetrice')
    add_function_args(parser)
    parser.add_argument('--zero-index', type=int, default=0)
    parser.add_argument('--csv', default=None, help='fisier CSV cu (w, theta)')
    parser.set_defaults(handler=saddle)

    parser = subparsers.add_parser('embed', help='scufundarea unui domino in sa')
    add_function_args(parser)
    parser.add_argument('--zero-index', type=int, default=0)
    parser.add_argument('--samples', type=int, default=1000)
    parser.add_argument('--seed', type=int, default=0)
    parser.set_defaults(handler=embed)

    parser = subparsers.add_parser('torus-classify', help='clasificarea torilor')
    parser.add_argument('--torus', required=True, help='fisier JSON cu descriptorul torului')
    parser.add_argument('--torus2', default=None, help='al doilea tor (raport de K-conformalitate)')
    parser.add_argument('--kmax', type=int, default=None, help='implicit Kmax din configurare')
    parser.add_argument('--allow-reversal', action='store_true')
    parser.set_defaults(handler=torus_classify)
