import math
import os
from pathlib import Path

import pytest

import wrangle

SRC = Path(os.environ.get("WRANGLE_SOURCE_DIR", Path(__file__).resolve().parents[2]))

EXPORT = (
    '"Site ID","Date","Lane","Direction Name","Speed"\n'
    "'000000001083,2018-02-01 00:00:01.18,6,\"South\",31.691\n"
    "'000000001083,2018-02-01 00:00:08.00,5,\"South\",40.390\n"
    "'000000001084,2018-02-02 17:10:00.00,1,\"North\",22.0\n"
)


def test_csv_round_trip_and_kinds():
    t = wrangle.Table.from_csv(EXPORT)
    assert t.shape == (3, 5)
    assert t.kinds == ["Text", "Timestamp", "Int", "Text", "Real"]
    assert t.column("Speed") == [31.691, 40.390, 22.0]
    assert wrangle.Table.from_csv(t.to_csv()) == t


def test_single_ops():
    t = wrangle.Table.from_csv(EXPORT)
    clean = wrangle.op("traffic.clean_site_id", {"col": "Site ID"}, in_=t)
    assert clean.column("Site ID") == ["1083", "1083", "1084"]
    south = wrangle.op("relops.filter", {"predicate": "`Direction Name` == 'South'"}, in_=t)
    assert len(south) == 2
    split = wrangle.op("traffic.separate_datetime", {"col": "Date"}, in_=t)
    assert split.column("Hours")[0] == "00:00:01.18"
    fridays = wrangle.op("traffic.filter_weekdays", {"col": "Date", "days": ["Friday"]}, in_=t)
    assert len(fridays) == 1


def test_group_mean_matches_hand_value():
    t = wrangle.Table.from_csv("k,Speed\na,31.691\na,40.390\n")
    g = wrangle.op("relops.group_summarise", {"by": ["k"], "aggs": ["m = mean(Speed)"]}, in_=t)
    assert g.column("m") == [pytest.approx((31.691 + 40.390) / 2, rel=1e-12)]


def test_journey_time_hand_arithmetic():
    t = wrangle.Table.from_csv("Site.ID,LinkLength,mean_speed\n1083,500,30\n")
    assert wrangle.journey_time_s(t) == pytest.approx(500 / (30 * 0.44704), rel=1e-12)


def test_weather_flatten_baltasound():
    doc = wrangle.WeatherDoc.read_json(str(SRC / "tests/data/baltasound_obs.json"))
    flat = doc.flatten()
    assert flat.shape == (1, 18)
    row = flat.to_dict()
    assert row["SiteName"] == ["BALTASOUND"]
    assert row["ObsTime"] == ["16:00:00"]
    assert row["W"] == [8]


def test_haversine_against_cosine_law():
    a, b = (60.749, -0.854), (60.759, -0.854)
    k = math.pi / 180
    c = math.sin(a[0] * k) * math.sin(b[0] * k) + math.cos(a[0] * k) * math.cos(b[0] * k) * math.cos(
        (b[1] - a[1]) * k
    )
    ref = 6371000.0 * math.acos(min(1.0, c))
    assert wrangle.haversine_m(*a, *b) == pytest.approx(ref, rel=1e-3)


def test_errors_carry_kind():
    with pytest.raises(wrangle.WrangleError) as e:
        wrangle.Table.from_csv('a\n"open\n')
    assert e.value.kind == "MalformedCsv"
    with pytest.raises(wrangle.WrangleError) as e:
        wrangle.op("relops.nope", in_=wrangle.Table.from_csv("a\n1\n"))
    assert e.value.kind == "UnknownOp"


def test_dwr1_workflow_end_to_end(tmp_path):
    files = wrangle.generate(seed=5, sites=2, rows=400)
    for name, content in files.items():
        (tmp_path / name).write_text(content)
    inputs = {
        "ds1_1": str(tmp_path / "site_1.csv"),
        "ds1_2": str(tmp_path / "site_2.csv"),
        "ds1_3": str(tmp_path / "sites.csv"),
    }
    outputs, report = wrangle.run_workflow(str(SRC / "workflows/dwr1.json"), inputs, deterministic_keys=True)
    assert len(report) == 10
    assert report[0]["key"] == "tbl-000000000001"
    per_link = outputs["per_link"]
    expected = sum(length / (speed * 0.44704) for length, speed in zip(per_link.column("LinkLength"), per_link.column("mean_speed")))
    assert outputs["journey_time_s"].column("journey_time_s")[0] == pytest.approx(expected, rel=1e-12)
    again, _ = wrangle.run_workflow(str(SRC / "workflows/dwr1.json"), inputs, sequential=True)
    assert again["journey_time_s"] == outputs["journey_time_s"]


def test_generate_is_deterministic():
    assert wrangle.generate(seed=1, rows=50) == wrangle.generate(seed=1, rows=50)
    names = {op["name"] for op in wrangle.list_ops()}
    assert {"relops.join", "weather.flatten", "chart.bar"} <= names
