import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import b0, b1, betweenness_instances, chain, profile_p1, three_cycle, tournaments
from rankfpt import BetweennessInstance, oracle_fast_perm
from rankfpt.bench import HEADER, bt_psi_ratio, run_one, sweep, write_csv
from rankfpt.cli import main
from rankfpt.formats import (ParseError, detect_kind, format_bt, format_fast, format_votes,
                             parse_bt, parse_fast, parse_votes)
from rankfpt.generators import bt_flips, fast_flips


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return _write


class TestFormats:
    @settings(max_examples=60, deadline=None)
    @given(tournaments(min_n=2, max_n=7))
    def test_fast_roundtrip(self, T):
        assert parse_fast(format_fast(T)) == T

    @settings(max_examples=40, deadline=None)
    @given(betweenness_instances(min_n=3, max_n=6))
    def test_bt_roundtrip(self, B):
        assert parse_bt(format_bt(B)) == B

    def test_votes_roundtrip(self):
        P = profile_p1()
        Q = parse_votes(format_votes(P))
        assert Q.candidates == P.candidates and Q.votes == P.votes

    def test_unweighted_shorthand(self):
        T = parse_fast("tour 3\n# the 3-cycle\na b\nb c\nc a\n")
        assert T == three_cycle()

    @pytest.mark.parametrize("text, line", [
        ("fast 2 3\nw a b 4\n", 2),
        ("fast 2 3\nw a b x\n", 2),
        ("fast 3 1\nw a b 1\nw a b 0\n", 3),
        ("fsat 2 1\n", 1),
        ("tour 2\na b c\n", 2),
    ])
    def test_fast_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_fast(text)
        assert exc.value.line == line

    def test_missing_pair(self):
        with pytest.raises(ParseError, match="missing pair"):
            parse_fast("fast 3 1\nw a b 1\nw a c 1\n")

    def test_missing_triple(self):
        with pytest.raises(ParseError, match="missing triple a b d"):
            parse_bt("bt 4\na b c b\na c d c\nb c d c\n")

    def test_detect(self):
        assert detect_kind("fast 2 1\n") == "fast"
        assert detect_kind("tour 2\n") == "fast"
        assert detect_kind("bt 3\n") == "bt"
        assert detect_kind("bt a\na bt\n") == "votes"


class TestGenerators:
    def test_no_flips_is_chain(self):
        assert fast_flips(5, 0, 7) == chain(5)

    def test_adjacent_flip_keeps_optimum_zero(self):
        T = fast_flips(5, 1, 0)
        assert T != chain(5)
        assert oracle_fast_perm(T)[0] == 0

    def test_bt_flip_hitting_b1(self):
        assert np.array_equal(bt_flips(4, 1, 11).mid, b1().mid)

    def test_deterministic(self):
        assert format_fast(fast_flips(30, 12, 5)) == format_fast(fast_flips(30, 12, 5))
        assert format_bt(bt_flips(9, 12, 5)) == format_bt(bt_flips(9, 12, 5))


class TestBench:
    def test_k_zero_row(self):
        row = run_one(("fast", 200, 0, 0))
        assert (row.opt_num, row.psi) == (0, 0)
        assert row.millis < 1000

    def test_rows_reproducible_except_time(self):
        strip = lambda rows: [r.csv_fields()[:-1] for r in rows]
        a = sweep("fast", [40], [0, 5, 10], range(2))
        b = sweep("fast", [40], [0, 5, 10], range(2), workers=2)
        assert strip(a) == strip(b)
        c = sweep("bt", [10], [3], [0])
        assert strip(c) == strip(sweep("bt", [10], [3], [0]))

    def test_psi_grows_with_flips(self):
        rows = sweep("fast", [200], [10, 20, 30, 40, 50], range(3))
        mean = [np.mean([r.psi for r in rows if r.k == k]) for k in (10, 20, 30, 40, 50)]
        assert mean == sorted(mean)

    def test_bt_psi_fit(self):
        # same constant as the betweenness band-width check
        c = 2 * (4 + math.sqrt(2) * 4) + 3 / math.sqrt(2)
        for r in sweep("bt", [60], [50, 150], [0]):
            assert r.psi <= c * math.sqrt(r.seed_cost / r.n) + 2
            assert bt_psi_ratio(r) < c

    def test_csv(self):
        buf = io.StringIO()
        write_csv(sweep("fast", [20], [2], [0]), buf)
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        assert tuple(rows[0]) == HEADER
        assert len(rows) == 2


class TestCommands:
    def test_solve_fast_chain(self, capsys, write):
        code, out, _ = run(capsys, "solve-fast", write("c.fast", format_fast(chain(5))))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "ranking v1 v2 v3 v4 v5"
        assert lines[1] == "cost 0/1"

    def test_solve_fast_cycle_json(self, capsys, write):
        code, out, _ = run(capsys, "solve-fast", write("c.fast", format_fast(three_cycle())),
                           "--json")
        assert code == 0
        assert out.splitlines()[1] == "cost 1/1"
        stats = json.loads(out.splitlines()[2])
        assert stats["kernel_vertices"] == 3

    def test_solve_fast_dc(self, capsys, write):
        path = write("c.fast", format_fast(fast_flips(12, 4, 2)))
        _, dp, _ = run(capsys, "solve-fast", path)
        _, dc, _ = run(capsys, "solve-fast", path, "--method", "dc")
        assert dp.splitlines()[1] == dc.splitlines()[1]

    def test_malformed_weight(self, capsys, write):
        code, _, err = run(capsys, "solve-fast", write("bad.fast", "fast 2 1\nw a b 7\n"))
        assert code == 2
        assert "line 2" in err

    def test_psi_cap_exit(self, capsys, write):
        path = write("f.fast", format_fast(fast_flips(60, 30, 1)))
        code, _, _ = run(capsys, "solve-fast", path, "--psi-cap", "2")
        assert code == 3

    def test_aggregate(self, capsys, write):
        code, out, _ = run(capsys, "aggregate", write("p1.votes", "a b c\na b c\nb a c\n"))
        assert code == 0
        assert out.splitlines()[:3] == ["ranking a b c", "cost 1/3", "average 1/3"]

    def test_aggregate_single_vote(self, capsys, write):
        code, out, _ = run(capsys, "aggregate", write("one.votes", "c a b\n"))
        assert out.splitlines()[:2] == ["ranking c a b", "cost 0/1"]

    def test_aggregate_unknown_candidate(self, capsys, write):
        code, _, err = run(capsys, "aggregate", write("bad.votes", "a b c\na b z\n"))
        assert code == 2 and "'z'" in err

    def test_solve_bt(self, capsys, write):
        code, out, _ = run(capsys, "solve-bt", write("b0.bt", format_bt(b0(6))))
        assert code == 0 and out.splitlines()[1] == "cost 0"
        code, out, _ = run(capsys, "solve-bt", write("b1.bt", format_bt(b1())))
        assert out.splitlines()[1] == "cost 1"

    def test_solve_bt_missing_triple(self, capsys, write):
        text = "\n".join(format_bt(b0(4)).splitlines()[:-1]) + "\n"
        code, _, err = run(capsys, "solve-bt", write("m.bt", text))
        assert code == 2 and "missing triple b c d" in err

    def test_gen(self, capsys):
        code, out, _ = run(capsys, "gen", "fast-flips", 5, 0, 3)
        assert code == 0 and parse_fast(out) == chain(5)
        _, out1, _ = run(capsys, "gen", "bt-flips", 6, 4, 9)
        _, out2, _ = run(capsys, "gen", "bt-flips", 6, 4, 9)
        assert out1 == out2
        assert isinstance(parse_bt(out1), BetweennessInstance)

    def test_bench(self, capsys):
        code, out, _ = run(capsys, "bench", "--n", 30, "--k", 0, 4)
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and tuple(rows[0]) == HEADER and len(rows) == 3

    def test_kernelize(self, capsys, write):
        _, out, _ = run(capsys, "kernelize", write("c.fast", format_fast(chain(5))))
        assert out.strip() == "kernel 0 vertices, shift 0/1"
        _, out, _ = run(capsys, "kernelize", write("t.fast", format_fast(three_cycle())))
        assert out.startswith("kernel 3 vertices")

    def test_kernelize_bad_bound(self, capsys, write):
        code, _, _ = run(capsys, "kernelize", write("t.fast", format_fast(three_cycle())),
                         "--bound", 0)
        assert code == 2

    def test_oracle(self, capsys, write):
        _, out, _ = run(capsys, "oracle", write("b1.bt", format_bt(b1())))
        assert out.splitlines()[1] == "cost 1"
        _, out, _ = run(capsys, "oracle", write("p1.votes", "a b c\na b c\nb a c\n"))
        assert out.splitlines()[1] == "cost 1/3"

    def test_unreadable_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve-fast", tmp_path / "nope.fast")
        assert code == 2 and "cannot read" in err
