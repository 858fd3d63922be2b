import math

import pytest

from iotembed.feasibility import EmbeddingOptions
from iotembed.scenario import (ArrivalSchedule, Method, MethodConfig, compare, run_reprovisioning,
                               run_sequential, saving)
from iotembed.solver import Budget, ENERGY

from conftest import chain_bp, network, node

EXACT_ALL = MethodConfig(Method.EXACT, budget=Budget(k_paths=None))


def ample():
    nodes = [node(i, 100.0 * i, 0.0, mcu=200, ram=1000) for i in range(3)]
    net = network(nodes, [(0, 1), (1, 2)])
    bps = [chain_bp(i, mhz=(4, 4, 4), kbps=(20, 20)) for i in range(6)]
    return net, ArrivalSchedule.chunked(bps, 2)


def test_schedule():
    sched = ArrivalSchedule.chunked([chain_bp(i) for i in range(5)], 2)
    assert [len(b) for b in sched.batches] == [2, 2, 1]
    with pytest.raises(ValueError):
        ArrivalSchedule(((chain_bp(0),), (chain_bp(0),)))
    with pytest.raises(ValueError):
        ArrivalSchedule.chunked([], 0)


def test_ample_instance_embeds_everything():
    net, sched = ample()
    res = run_sequential(net, sched, EXACT_ALL)
    assert [len(b.embedded) for b in res.batches] == [2, 4, 6]
    assert all(not b.blocked for b in res.batches)
    objs = [b.objective for b in res.batches]
    assert objs == sorted(objs)


def test_sequential_freezes_earlier_embeddings():
    net, sched = ample()
    res = run_sequential(net, sched, MethodConfig(Method.ELUSE, seed=2))
    for prev, cur in zip(res.batches, res.batches[1:]):
        for key, host in prev.solution.assignment.items():
            assert cur.solution.assignment[key] == host
        for did, path in prev.solution.routing.paths.items():
            assert cur.solution.routing.paths[did] == path


def crafted():
    # node 0 is efficient and the only host of function 3; the first BP fills it
    nodes = [node(0, 0, 0, mcu=48, peak=16, funcs=(0, 1, 2, 3)),
             node(1, 100, 0, mcu=48, peak=48, funcs=(0, 1, 2))]
    net = network(nodes, [(0, 1)], functions=(0, 1, 2, 3))
    first = chain_bp(0, mhz=(12, 12, 12), kbps=(50, 50))
    second = chain_bp(1, mhz=(20, 4, 4), kbps=(50, 50), funcs=(3, 1, 2))
    return net, ArrivalSchedule(((first,), (second,)))


def test_crafted_sequential_block_reprovision_embeds():
    net, sched = crafted()
    seq = run_sequential(net, sched, EXACT_ALL)
    rep = run_reprovisioning(net, sched, EXACT_ALL)
    assert seq.batches[1].blocked == (1,)
    assert rep.batches[1].blocked == ()
    assert set(rep.batches[1].solution.assignment.values()) == {0, 1}


def test_blocked_stays_blocked():
    net, sched = crafted()
    third = chain_bp(2, mhz=(4, 4, 4), kbps=(50, 50))
    sched = ArrivalSchedule(sched.batches + ((third,),))
    seq = run_sequential(net, sched, EXACT_ALL)
    assert 1 in seq.batches[2].blocked and 1 not in seq.batches[2].embedded
    for b in seq.batches:
        assert len(b.embedded) + len(b.blocked) == b.offered


def test_reprovisioning_deterministic():
    net, sched = ample()
    a = run_reprovisioning(net, sched, MethodConfig(Method.RESE))
    b = run_reprovisioning(net, sched, MethodConfig(Method.RESE))
    assert a == b


def test_saving_arithmetic():
    assert saving(37, 100) == pytest.approx(63)
    assert saving(100, 100) == 0
    assert saving(120, 100) == pytest.approx(-20)
    assert saving(5, 0) is None


def test_compare_against_seed_mean():
    net, sched = ample()
    opts = EmbeddingOptions()
    res = run_reprovisioning(net, sched, MethodConfig(Method.RESE), ENERGY, opts)
    base = [run_reprovisioning(net, sched, MethodConfig(Method.ELUSE, seed=s), ENERGY, opts) for s in range(3)]
    table = compare(res, base)
    for row, i in zip(table.rows, range(3)):
        mean_power = math.fsum(b.batches[i].power for b in base) / 3
        assert row.baseline_power == pytest.approx(mean_power)
        assert row.power_saving == pytest.approx(100 * (1 - row.power / mean_power))
    assert compare(res, res).mean_power_saving == 0
