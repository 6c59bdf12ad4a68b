import math

import numpy as np
import pytest

from donor_halo import (MaterialError, MissingParameterError, compute_bq,
                        get_material, list_materials, load_registry, scale_r14,
                        thermal_velocity)
from donor_halo.materials import (K_BOLTZMANN, M_ELECTRON, dump_record,
                                  parse_registry)


def test_registry_lists_eight_records():
    assert len(list_materials()) == 8
    assert "GaAs:As75" in list_materials()


def test_coupling_round_trip_all_records():
    for record in load_registry().values():
        recomputed = record.bq_recomputed()
        assert abs(recomputed - record.b_q) <= 0.10 * record.b_q, record.name


def test_compute_bq_reference_values(gaas):
    # tabulated coupling for the default record
    value = compute_bq(3.2e12, gaas.quadrupole_moment, 1.5, gaas.gamma)
    assert value == pytest.approx(2.8e-10, rel=0.10)
    indium = get_material("InAs:In115")
    value = compute_bq(4.4e12, indium.quadrupole_moment, 4.5, indium.gamma)
    assert value == pytest.approx(0.7e-10, rel=0.10)


def test_compute_bq_rejects_spin_half():
    with pytest.raises(MaterialError, match="no quadrupole moment"):
        compute_bq(3.2e12, 3.14e-29, 0.5, 4.6e7)


def test_compute_bq_monotone_in_spin():
    values = [compute_bq(3.2e12, 3.14e-29, spin, 4.6e7)
              for spin in (1.0, 1.5, 2.5, 3.5, 4.5)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_scale_r14():
    assert scale_r14(1.7e12, 3.2e12, 1.7e12) == pytest.approx(3.2e12)
    assert scale_r14(2.4e12, 5.0e12, 5.0e12) == pytest.approx(2.4e12)
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b, c = rng.uniform(0.1, 10.0, size=3) * 1e12
        assert scale_r14(a, b, c) == pytest.approx(a * b / c, rel=1e-14)
    with pytest.raises(MaterialError):
        scale_r14(1.0, 1.0, 0.0)


def test_parse_rejects_unknown_key(gaas):
    text = dump_record(gaas) + "banana = 3\n"
    with pytest.raises(MaterialError, match="unknown key 'banana'"):
        parse_registry(text)


def test_parse_rejects_missing_key(gaas):
    text = "\n".join(line for line in dump_record(gaas).splitlines()
                     if not line.startswith("gamma ="))
    with pytest.raises(MaterialError, match="missing keys"):
        parse_registry(text)


def test_parse_rejects_duplicate_block(gaas):
    text = dump_record(gaas) * 2
    with pytest.raises(MaterialError, match="duplicate"):
        parse_registry(text)


def test_dump_parse_round_trip(gaas):
    parsed = parse_registry(dump_record(gaas))[gaas.name]
    assert parsed.spin == gaas.spin
    assert parsed.b_q == pytest.approx(gaas.b_q, rel=1e-6)
    assert parsed.hyperfine_field_bohr == pytest.approx(
        gaas.hyperfine_field_bohr, rel=1e-6)


def test_overrides_typed_and_checked(gaas):
    hotter = gaas.with_overrides(velocity=4.5e5)
    assert hotter.velocity == 4.5e5
    with pytest.raises(MaterialError, match="unknown material field"):
        gaas.with_overrides(nonsense=1.0)


def test_record_invariants(gaas):
    with pytest.raises(MaterialError, match="acceptor density"):
        gaas.with_overrides(acceptor_density=gaas.donor_density / 2.0)
    with pytest.raises(MaterialError, match="must be positive"):
        gaas.with_overrides(recombination_time=-1.0)
    with pytest.raises(MaterialError, match="half-integer"):
        gaas.with_overrides(spin=1.3)
    # stored coupling must stay consistent with the nuclear data
    with pytest.raises(MaterialError, match="differs from recomputed"):
        gaas.with_overrides(b_q=gaas.b_q * 1.25)


def test_nullable_hyperfine_field():
    record = get_material("InP:In115")
    assert record.hyperfine_field_bohr is None
    with pytest.raises(MissingParameterError):
        record.require_hyperfine_field()
    assert "uncertainty" in record.note


def test_unknown_material_lists_known():
    with pytest.raises(MaterialError, match="known records"):
        get_material("GaAs:As76")


def test_thermal_velocity():
    expected = math.sqrt(3.0 * K_BOLTZMANN * 77.0 / (0.067 * M_ELECTRON))
    assert thermal_velocity(77.0, 0.067) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(MaterialError):
        thermal_velocity(-1.0, 0.067)
