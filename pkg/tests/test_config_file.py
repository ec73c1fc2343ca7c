import pytest

from fnasim.errors import ConfigError
from fnasim.utils.config_file import load_key_values, parse_config


def test_empty_config_is_the_baseline():
    plan = parse_config()
    base = plan.base
    assert base.num_caches == 3
    assert base.access_costs == [1, 2, 3]
    assert base.miss_penalty == 100
    assert base.cache_capacities == [10_000] * 3
    assert base.bpe == 14
    assert base.resolved_update_intervals() == [1_000] * 3
    assert plan.sweep_axis == "none"
    assert plan.policies == ["fna", "fno", "fna_star", "pif"]


def test_file_values_and_overrides(tmp_path):
    # GIVEN
    path = tmp_path / "run.conf"
    path.write_text(
        "# baseline with a bigger penalty\n"
        "miss_penalty = 300\n"
        "cache_capacities = 500\n"
        "zipf_alpha = 0.9\n"
        "policies = fna, pif\n",
        encoding="utf-8",
    )

    # WHEN
    plan = parse_config(str(path), {"miss_penalty": 500, "seed": 3})

    # THEN
    assert plan.base.miss_penalty == 500
    assert plan.base.seed == 3
    assert plan.base.cache_capacities == [500, 500, 500]
    assert plan.base.workload.zipf_alpha == 0.9
    assert plan.policies == ["fna", "pif"]


def test_sweep_keys():
    plan = parse_config(overrides={"sweep_axis": "update_interval", "sweep_values": "256,1024"})
    assert plan.axis_values() == [256.0, 1024.0]
    assert plan.config_at(1024.0, "fno").resolved_update_intervals() == [1024] * 3


def test_num_caches_sweep_averages_costs():
    plan = parse_config(overrides={"sweep_axis": "num_caches", "sweep_values": "2,5"})
    config = plan.config_at(5.0, "fna")
    assert config.num_caches == 5
    assert config.access_costs == [2.0] * 5
    assert config.cache_capacities == [10_000] * 5


def test_num_caches_alone_sizes_the_per_cache_defaults():
    base = parse_config(overrides={"num_caches": 5}).base
    assert base.cache_capacities == [10_000] * 5
    assert base.access_costs == [1, 2, 3, 4, 5]

    with pytest.raises(ConfigError) as exc_info:
        parse_config(overrides={"num_caches": 5, "access_costs": "1,2,3"})
    assert "access_costs" in str(exc_info.value)


def test_none_clears_optional_keys():
    plan = parse_config(overrides={"update_interval": "none"})
    assert plan.base.update_interval is None


@pytest.mark.parametrize(
    "overrides, field",
    [
        ({"cache_capacities": "-5"}, "cache_capacities"),
        ({"bpe": "abc"}, "bpe"),
        ({"policy": "random"}, "policy"),
        ({"no_such_key": "1"}, "no_such_key"),
        ({"sweep_axis": "bpe"}, "sweep_values"),
    ],
)
def test_invalid_values_name_the_field(overrides, field):
    with pytest.raises(ConfigError) as exc_info:
        parse_config(overrides=overrides)
    assert field in str(exc_info.value)


def test_mismatched_cost_list_is_rejected():
    with pytest.raises(ConfigError):
        parse_config(overrides={"access_costs": "1,2"})


def test_malformed_line(tmp_path):
    path = tmp_path / "bad.conf"
    path.write_text("miss_penalty 100\n", encoding="utf-8")
    with pytest.raises(ConfigError) as exc_info:
        load_key_values(str(path))
    assert exc_info.value.field == "line 1"


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(str(tmp_path / "absent.conf"))


def test_event_logs_are_split_per_run():
    plan = parse_config(
        overrides={
            "event_log_path": "out/events.csv",
            "sweep_axis": "update_interval",
            "sweep_values": "1024",
        }
    )
    assert plan.config_at(1024.0, "fna").event_log_path == "out/events.fna.1024.csv"
