"""Loop search over splitting sequences, and sequence replay."""

import pytest

from ttlab.atlas import (
    TWIST_GI_TEXT,
    base_track,
    identification_ii,
    initial_track,
    phi1,
    phi3,
    s1_moves,
    splitting_sequence,
    t_gi,
    twisted_track,
)
from ttlab.errors import IllegalMove, NotAnIdentification, ResourceLimit
from ttlab.search import LoopResult, SearchConfig, search_loops, replay
from ttlab.splitting import SplitMove, apply_sequence, format_sequence
from ttlab.words import format_word


@pytest.fixture(scope="module")
def census():
    return search_loops(twisted_track(), SearchConfig(max_depth=4))


def test_no_loops_below_depth_four():
    assert search_loops(base_track(), SearchConfig(max_depth=1)) == ()
    assert search_loops(twisted_track(), SearchConfig(max_depth=3)) == ()


def test_census_size_and_shape(census):
    assert len(census) == 80
    assert all(isinstance(r, LoopResult) for r in census)
    assert all(len(r.sequence) == 4 for r in census)
    assert all(len(r.identifications) == 2 for r in census)
    assert all(len(r.self_maps) == 2 for r in census)
    assert all(r.seed.name == "tau_prime" for r in census)


def test_census_closures_all_reducible(census):
    # a four move loop always carries an invariant edge set
    assert all(len(r.certificates) == 2 for r in census)
    assert {c.verdict for r in census for c in r.certificates} == {"reducible"}


def test_census_sequences_replay_cleanly(census):
    for r in census[:10]:
        run = apply_sequence(r.seed, r.sequence)
        assert run.morphism.mapping == r.composite.mapping
    for r in census:
        for sm in r.self_maps:
            sm.check()
            assert sm.is_smooth()
            assert sm.source.name == sm.target.name


def test_twist_loop_found(census):
    hits = [r for r in census if format_sequence(r.sequence) == TWIST_GI_TEXT]
    assert len(hits) == 1
    loop = hits[0]
    assert loop.composite.mapping == t_gi().mapping
    swap = dict(loop.identifications[0].labels)
    assert swap["i"] == "g" and swap["g"] == "i"
    assert all(swap[c] == c for c in "abcdefhjkl")
    words = {k: format_word(w) for k, w in loop.self_maps[0].mapping.items()}
    assert words == {
        "a": "a", "b": "b", "c": "c", "d": "d", "e": "e", "f": "f i",
        "g": "i", "h": "h", "i": "g", "j": "i j", "k": "g k g", "l": "l",
    }


def test_search_deterministic_across_fanout(census):
    plain = [(format_sequence(r.sequence),
              tuple(dict(i.labels).items() for i in r.identifications))
             for r in census]
    for fanout in (2, 4):
        again = search_loops(
            twisted_track(),
            SearchConfig(max_depth=4, fanout=fanout, certify=False))
        got = [(format_sequence(r.sequence),
                tuple(dict(i.labels).items() for i in r.identifications))
               for r in again]
        assert got == plain


def test_filters_drop_reducible_loops(census):
    cfg = SearchConfig(max_depth=4, require_fixed_point_free=True)
    assert search_loops(twisted_track(), cfg) == ()
    cfg = SearchConfig(max_depth=4, require_irreducible=True)
    assert search_loops(twisted_track(), cfg) == ()


def test_node_budget():
    with pytest.raises(ResourceLimit):
        search_loops(twisted_track(), SearchConfig(max_depth=4, max_nodes=10))


def test_replay_sigma1_closure():
    result = replay(initial_track(), s1_moves(), identification_ii())
    assert len(result.self_maps) == 1
    sm = result.self_maps[0]
    assert sm.mapping == phi1().mapping
    assert result.certificates[0].verdict == "reducible"


def test_replay_longer_sequence_is_pa():
    result = replay(initial_track(), splitting_sequence(3), identification_ii())
    assert result.self_maps[0].mapping == phi3().mapping
    assert result.certificates[0].verdict == "pA"
    assert result.certificates[0].fixed_point_free


def test_replay_empty_sequence_identity():
    track = base_track()
    ident = {c: c for c in "abcdefghijkl"}
    result = replay(track, (), ident)
    sm = result.self_maps[0]
    assert all(format_word(w) == lab for lab, w in sm.mapping.items())
    assert result.certificates[0].verdict == "reducible"


def test_replay_without_identification_keeps_all_closures():
    result = replay(initial_track(), s1_moves())
    assert len(result.self_maps) == 2
    assert any(sm.mapping == phi1().mapping for sm in result.self_maps)


def test_replay_rejects_wrong_identification():
    bogus = {c: c for c in "abcdefghijkl"}
    with pytest.raises(NotAnIdentification):
        replay(initial_track(), s1_moves(), bogus)


def test_replay_propagates_illegal_moves():
    bad = (s1_moves()[0], SplitMove(("a", "i"), ("a", "t")))
    with pytest.raises(IllegalMove) as err:
        replay(initial_track(), bad)
    assert err.value.index == 1
