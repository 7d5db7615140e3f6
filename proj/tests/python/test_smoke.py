import math

import qeve


def test_information_values():
    assert qeve.info_ab(0.0) == 1.0
    assert qeve.info_ab(0.5) == 0.0
    assert abs(qeve.info_eve_intensity(math.pi / 2) - 0.5) < 1e-12
    best = qeve.optimize_info(0.1534)
    assert abs(best["i_ae"] - 0.3819) < 5e-4
    assert abs(qeve.ber(best["alpha"], best["beta"]) - 0.1534) < 1e-9


def test_intercept_resend():
    q, i_ae = qeve.intercept_resend(1.0)
    assert abs(q - 0.25) < 1e-15
    assert abs(i_ae - 0.5) < 1e-15


def test_bell_and_qpa():
    r = qeve.bell_report_intensity(math.pi / 3)
    assert abs(r["s_ab"] - 1.5 * math.sqrt(2)) < 1e-12
    assert abs(r["s_ae"] - math.sqrt(6)) < 1e-12
    assert abs(qeve.singlet_fraction_intensity(math.pi / 3) - 0.75) < 1e-12
    assert qeve.qpa_feasible_intensity(math.pi / 3)
    assert not qeve.qpa_feasible_intensity(math.pi / 2)


def test_cloning():
    assert abs(qeve.mean_fidelity("uqcm") - 5 / 6) < 1e-9
    best = qeve.optimize_cloner()
    assert abs(best["alpha"] - math.pi / 12) < 1e-3
    assert abs(best["f_bar"] - (8 + 3 * math.sqrt(3)) / 16) < 1e-6
    s1, s2 = qeve.broadcast_bell("uqcm")
    assert abs(s1 - 2 * math.sqrt(2) * 2 / 3) < 1e-9
    assert s1 == s2


def test_simulation_determinism():
    kw = dict(eve="intensity:0.9:sym", n=20000, seed=7)
    one = qeve.simulate(threads=1, **kw)
    many = qeve.simulate(threads=4, **kw)
    assert one == many
    assert one["rng_trace_digest"] == many["rng_trace_digest"]
    clean = qeve.simulate(n=5000, seed=3)
    assert clean["empirical_q"] == 0.0


def test_broadcast_sim():
    r = qeve.broadcast_sim(cloner="uqcm", n=30000, seed=5)
    assert abs(r["bob1"]["empirical_s"] - 1.8856) < 0.2
    assert abs(r["bob2"]["empirical_s"] - 1.8856) < 0.2


def test_bad_input_raises():
    try:
        qeve.simulate(eve="bogus:1")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for unknown strategy")
