from datetime import datetime, time, timedelta

import pytest
from hypothesis import given, strategies as st

from oracles import read_transactions
from sensormine.errors import ConfigError
from sensormine.itemsets import MiningParams
from sensormine.rooms import (BEDROOM_WINDOW, TimeWindow,
                              collect_window_transactions, deduce_bedrooms, deduce_kitchen,
                              expand_with_topology)
from sensormine.segmentation import IndoorActivity
from sensormine.sensor_log import SensorEvent
from sensormine.topology import DASHED, SOLID, Topology

DAY0 = datetime(2009, 10, 16)


def activity_at(start, sensors):
    return IndoorActivity(tuple(SensorEvent(start + timedelta(seconds=5 * i), s, "ON")
                                for i, s in enumerate(sensors)))


def topology_from(links, kind=SOLID):
    edges = {frozenset(p): kind for p in links}
    return Topology(edges, frozenset(s for p in links for s in p))


# bedroom: M019 touches 3 of the 5 seed sensors, M018 only 2
# kitchen: D003, M012 and M016 each touch 2 of the 4 seed sensors
HOUSE = topology_from([
    ("M013", "M020"), ("M020", "M021"), ("M021", "M025"), ("M025", "M028"),
    ("M019", "M020"), ("M019", "M021"), ("M019", "M025"),
    ("M018", "M013"), ("M018", "M028"),
    ("M014", "M015"), ("M015", "M022"), ("M022", "M023"),
    ("D003", "M014"), ("D003", "M015"),
    ("M012", "M022"), ("M012", "M023"),
    ("M016", "M015"), ("M016", "M023"),
    ("M017", "M016"), ("M011", "M017"),
])


def night_activities(data_dir):
    lists = read_transactions(data_dir / "night_transactions.txt")
    return [activity_at(DAY0 + timedelta(days=d, hours=3), s) for d, s in enumerate(lists)]


def dinner_activities(data_dir):
    lists = read_transactions(data_dir / "dinner_transactions.txt")
    return [activity_at(DAY0 + timedelta(days=d % 6, hours=18, minutes=d), s)
            for d, s in enumerate(lists)]


def test_window_parse_and_bounds():
    w = TimeWindow.parse("02:00-06:00")
    assert w == BEDROOM_WINDOW and str(w) == "02:00-06:00"
    assert w.contains(datetime(2009, 1, 1, 2, 0, 0))
    assert w.contains(datetime(2009, 1, 1, 5, 59, 59, 999999))
    assert not w.contains(datetime(2009, 1, 1, 6, 0, 0, 1))
    assert not w.contains(datetime(2009, 1, 1, 6, 0, 0))


@pytest.mark.parametrize("text", ["06:00-02:00", "02:00-02:00", "2am-6am", "02:00"])
def test_bad_windows(text):
    with pytest.raises(ConfigError):
        TimeWindow.parse(text)


def test_transactions_from_worked_example():
    act = activity_at(DAY0.replace(hour=3), ["S027", "S003", "S012", "S023", "S003", "S022"])
    late = activity_at(DAY0.replace(hour=6, microsecond=1), ["A", "B"])
    assert collect_window_transactions([act, late], BEDROOM_WINDOW) == [
        frozenset({"S003", "S012", "S022", "S023", "S027"})]


def test_expansion_bedroom_seed():
    seed = {"M013", "M020", "M021", "M025", "M028"}
    assert expand_with_topology(seed, HOUSE) == seed | {"M019"}


def test_expansion_kitchen_seed_uses_round_snapshot():
    seed = {"M014", "M015", "M022", "M023"}
    assert expand_with_topology(seed, HOUSE) == seed | {"D003", "M012", "M016"}


def test_expansion_without_outside_neighbours():
    topo = topology_from([("A", "B"), ("C", "D")])
    assert expand_with_topology({"A", "B"}, topo) == {"A", "B"}


def test_expansion_star():
    topo = topology_from([("C", "A"), ("C", "B"), ("C", "D"), ("D", "E")])
    # C: 3 of 3 joins; E then has 1 of 4 links and stays out
    assert expand_with_topology({"A", "B", "D"}, topo) == {"A", "B", "C", "D"}


def test_expansion_chain_reaches_fixpoint():
    # round 1: C (1 of 2); round 2: D has 1 of 3 -> no
    topo = topology_from([("A", "B"), ("B", "C"), ("C", "D")])
    assert expand_with_topology({"A", "B"}, topo) == {"A", "B", "C"}
    # dashed edges count the same
    assert expand_with_topology({"A", "B"}, topology_from([("A", "B"), ("B", "C"), ("C", "D")], DASHED)) == {"A", "B", "C"}


def test_expansion_respects_exclusions():
    seed = {"M013", "M020", "M021", "M025", "M028"}
    assert expand_with_topology(seed, HOUSE, excluded={"M019"}) == seed


sensor_names = st.sampled_from([f"S{i}" for i in range(8)])


@given(st.sets(st.tuples(sensor_names, sensor_names).filter(lambda p: p[0] != p[1]), max_size=20),
       st.sets(sensor_names, min_size=1, max_size=4), st.sets(sensor_names, max_size=3))
def test_expansion_properties(links, seed, excluded):
    excluded = excluded - seed
    topo = topology_from(links)
    grown = expand_with_topology(seed, topo, excluded)
    assert grown >= seed
    assert not grown & excluded
    assert expand_with_topology(grown, topo, excluded) == grown


def test_bedroom_from_night_lists(data_dir):
    rooms = deduce_bedrooms(night_activities(data_dir), HOUSE)
    assert len(rooms) == 1
    room = rooms[0]
    assert room.label == "bedroom 1"
    assert room.seed == {"M013", "M020", "M021", "M025", "M028"}
    assert room.expanded == {"M013", "M019", "M020", "M021", "M025", "M028"}
    assert room.seed_support == 2 and room.transactions == 4


def test_kitchen_from_dinner_lists(data_dir):
    bedroom = {"M013", "M019", "M020", "M021", "M025", "M028"}
    room = deduce_kitchen(dinner_activities(data_dir), HOUSE, excluded=bedroom)
    assert room.seed == {"M014", "M015", "M022", "M023"}
    assert room.added == {"D003", "M012", "M016"}
    assert room.seed_support == 23 and room.transactions == 41
    assert not room.dropped_from_seed


def test_two_bedrooms():
    acts = [activity_at(DAY0 + timedelta(days=d, hours=3), s)
            for d, s in enumerate(["XYZ", "ABC", "ABCX", "XYZ", "ABC", "YZX"])]
    topo = topology_from([("A", "B"), ("B", "C"), ("X", "Y"), ("Y", "Z"), ("C", "X")])
    rooms = deduce_bedrooms(acts, topo)
    assert [r.expanded for r in rooms] == [{"A", "B", "C"}, {"X", "Y", "Z"}]
    assert [r.transactions for r in rooms] == [6, 3]
    assert not rooms[0].expanded & rooms[1].expanded


def test_no_night_activity():
    acts = [activity_at(DAY0.replace(hour=12), "ABC")]
    assert deduce_bedrooms(acts, HOUSE) == []
    assert deduce_bedrooms([], HOUSE) == []


def test_single_sensor_dominant_set_stops():
    acts = [activity_at(DAY0 + timedelta(days=d, hours=3), s) for d, s in enumerate(["AB", "AC", "AD"])]
    assert deduce_bedrooms(acts, HOUSE) == []


def test_empty_kitchen():
    assert deduce_kitchen([], HOUSE) is None


def test_kitchen_seed_drops_bedroom_sensors():
    acts = [activity_at(DAY0 + timedelta(days=d, hours=18), "ABKL") for d in range(3)]
    room = deduce_kitchen(acts, topology_from([("A", "K"), ("K", "L")]), excluded={"A", "B"})
    assert room.seed == {"K", "L"}
    assert room.dropped_from_seed == {"A", "B"}
    assert room.to_dict()["dropped_from_seed"] == ["A", "B"]


def test_custom_window_and_support(data_dir):
    acts = [activity_at(DAY0.replace(hour=9, minute=m), s) for m, s in enumerate(["AB", "AB", "CD"])]
    rooms = deduce_bedrooms(acts, Topology(), TimeWindow(time(9), time(10)), MiningParams(0.6))
    assert [r.seed for r in rooms] == [{"A", "B"}, {"C", "D"}]
