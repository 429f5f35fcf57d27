import io
import json
from itertools import combinations

import pytest
from conftest import CLASSIC, window_blocked_by_embedding

import pairblock as pb
from pairblock.errors import MalformedInstance
from pairblock.pairing import (
    PartnerStatus,
    certificate_from_json_dict,
    certificate_to_json_dict,
    partner_table,
)


def test_worked_certificate_fields(worked_cert):
    assert worked_cert.spec.prime == 3
    assert worked_cert.spec.win_length == 4
    assert worked_cert.embedding.weights == (4,)
    assert worked_cert.embedding.u_prime == (1,)
    assert worked_cert.residues.triples == ((1, 0, 1),)
    assert worked_cert.embedding.offsets == ((4, 1),)


def test_classic_certificate_parameters(classic_cert):
    assert classic_cert.spec.prime == 11
    assert classic_cert.spec.win_length == 12
    assert classic_cert.spec.n_directions == 4


def test_prime_override_still_blocks():
    cert = pb.build_certificate(12, 1, [(1,)], seed=1, prime_override=5)
    assert cert.spec.win_length == 6
    assert pb.verify_blocking(cert).blocked


def test_prime_override_must_be_admissible():
    with pytest.raises(ValueError):
        pb.build_certificate(12, 1, [(1,)], seed=1, prime_override=4)
    with pytest.raises(ValueError):
        pb.build_certificate(10, 2, CLASSIC, seed=0, prime_override=7)


def test_build_certificate_accepts_raw_vectors_and_dedups():
    cert = pb.build_certificate(10, 2, [(1, 0), (-1, 0), (0, 1)], seed=0)
    assert cert.spec.n_directions == 2


def test_residue_of_worked_examples(worked_cert):
    assert pb.residue_of((3,), worked_cert) == 0
    assert pb.residue_of((1,), worked_cert) == 1


@pytest.mark.parametrize(
    "side,dim,dirs",
    [
        (3, 1, [(1,)]),
        (6, 1, [(1,)]),
        (6, 2, [(1, 0), (0, 1)]),
        (4, 2, [(1, 1), (1, -1)]),
        (6, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        (4, 3, [(1, 1, 1), (1, 0, -1)]),
    ],
)
def test_residue_of_equals_embed_mod_p(side, dim, dirs):
    cert = pb.build_certificate(side, dim, dirs, seed=3)
    weights = cert.embedding.weights
    p = cert.spec.prime
    for point in cert.spec.board.points():
        assert pb.residue_of(point, cert) == pb.embed(point, weights) % p


def test_partner_worked_examples(worked_cert):
    assert pb.partner((3,), worked_cert) == pb.PartnerResult(PartnerStatus.MATCHED, (4,), 0)
    assert pb.partner((4,), worked_cert) == pb.PartnerResult(PartnerStatus.MATCHED, (3,), 0)
    assert pb.partner((2,), worked_cert).status is PartnerStatus.UNMATCHED
    # ply partner of (12,) is (13,), off the N=12 board
    result = pb.partner((12,), worked_cert)
    assert result.status is PartnerStatus.OFF_BOARD
    assert result.direction_index == 0


def test_partner_involution_and_geometry(classic_cert):
    table = partner_table(classic_cert)
    matched = 0
    for point, result in table.items():
        if result.status is not PartnerStatus.MATCHED:
            continue
        matched += 1
        back = table[result.partner]
        assert back.status is PartnerStatus.MATCHED
        assert back.partner == point
        assert back.direction_index == result.direction_index
        v = classic_cert.spec.directions[result.direction_index].vector
        diff = tuple(a - b for a, b in zip(result.partner, point))
        assert diff == v or diff == tuple(-c for c in v)
    assert matched > 0


def test_partner_role_never_ambiguous(classic_cert):
    # residue distinctness means partner() never sees two roles for one point
    for point in classic_cert.spec.board.points():
        pb.partner(point, classic_cert)


def test_verify_blocking_worked_cert(worked_cert):
    report = pb.verify_blocking(worked_cert)
    assert report.blocked
    assert report.windows_checked == 9
    assert report.per_direction_counts == {"1": 9}
    assert report.counterexample is None


def test_verify_blocking_shorter_windows_fail(worked_cert):
    report = pb.verify_blocking(worked_cert, 3)
    assert not report.blocked
    assert report.counterexample is not None
    assert report.counterexample.start == (1,)
    assert report.counterexample.length == 3
    # the counterexample truly has no internal pair: 1 links off board, 2 is
    # unmatched, 3 links to 4 outside the window
    assert not window_blocked_by_embedding(worked_cert, report.counterexample)
    # windows are still counted after the scan stops
    assert report.windows_checked == 10


def test_verify_blocking_agrees_with_embedding_oracle(worked_cert):
    from pairblock.lattice import enumerate_windows

    for direction in worked_cert.spec.directions:
        for window in enumerate_windows(worked_cert.spec.board, direction, 4):
            assert window_blocked_by_embedding(worked_cert, window)


def test_verify_blocking_vacuous_when_no_window_fits():
    cert = pb.build_certificate(3, 1, [(1,)], seed=1)  # m=4 on a side-3 board
    report = pb.verify_blocking(cert)
    assert report.blocked
    assert report.windows_checked == 0
    assert report.per_direction_counts == {"1": 0}


def test_certificate_json_round_trip(classic_cert):
    text = pb.dumps_certificate(classic_cert)
    assert text == pb.dumps_certificate(classic_cert)
    loaded = pb.load_certificate(io.StringIO(text))
    assert loaded == classic_cert
    table = partner_table(classic_cert)
    assert partner_table(loaded) == table
    assert pb.dumps_certificate(loaded) == text


def test_certificate_json_is_all_decimal_strings(worked_cert):
    obj = json.loads(pb.dumps_certificate(worked_cert))
    assert obj == {
        "version": "1",
        "N": "12",
        "d": "1",
        "directions": [["1"]],
        "p": "3",
        "m": "4",
        "u_prime": ["1"],
        "base": "26",
        "residues": [{"delta": "1", "x": "0", "y": "1", "sign": "1"}],
    }


def test_load_rejects_tampering(worked_cert):
    base = certificate_to_json_dict(worked_cert)

    tampered = json.loads(json.dumps(base))
    tampered["residues"][0]["y"] = "2"
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    tampered = json.loads(json.dumps(base))
    tampered["base"] = "27"
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    tampered = json.loads(json.dumps(base))
    tampered["residues"][0]["sign"] = "-1"
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    tampered = json.loads(json.dumps(base))
    tampered["m"] = "5"
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    tampered = json.loads(json.dumps(base))
    tampered["version"] = "2"
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    tampered = json.loads(json.dumps(base))
    tampered["directions"] = [["-1"]]
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    tampered = json.loads(json.dumps(base))
    tampered["u_prime"] = ["not-a-number"]
    with pytest.raises(MalformedInstance):
        certificate_from_json_dict(tampered)

    with pytest.raises(MalformedInstance):
        pb.load_certificate(io.StringIO("{not json"))


def test_blocked_windows_have_unique_pair_structure(worked_cert):
    # in the d=1 worked pairing every length-4 window contains exactly one
    # full pair (3t, 3t+1); check by brute force over the embedding
    from pairblock.lattice import enumerate_windows

    for window in enumerate_windows(worked_cert.spec.board, worked_cert.spec.directions[0], 4):
        pts = window.points()
        pairs = [
            (a, b)
            for a, b in combinations(pts, 2)
            if pb.partner(a, worked_cert) == pb.PartnerResult(PartnerStatus.MATCHED, b, 0)
        ]
        assert len(pairs) == 1
