"""Command-line front end.

Subcommands:

* simulate  - run one honest session, write transcript and secrets files
* attack    - run an attack method against a transcript file
* check     - compare a recovered key against the secrets file
* bench     - per-phase timings of simulate+attack trials
* selftest  - quick deterministic smoke checks

Exit codes: 0 success, 1 the attack method reported failure (or a key
mismatch in check), 2 usage or file-format errors.  All randomness is
derived from --seed, so equal invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from . import kex, presets
from .attack import METHODS, report_from_json, report_to_json, run_attack
from .kex import run_session, secrets_from_json, transcript_from_json, transcript_to_json
from .platform import mat_rank


def _fail_usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _simulate_once(args, seed: int):
    master = random.Random(seed)
    m = master.randint(2, args.exp_bound)
    n = master.randint(2, args.exp_bound)
    inst_seed = master.randrange(2**63)
    session_seed = master.randrange(2**63)
    spec, phi, g = presets.make_instance(args.platform, args.masked, inst_seed)
    transcript, secrets = run_session(spec, phi, g, m, n, args.masked, session_seed)
    return spec, transcript, secrets


def cmd_simulate(args) -> int:
    try:
        spec, transcript, secrets = _simulate_once(args, args.seed)
    except ValueError as e:
        return _fail_usage(str(e))
    if not args.masked and spec.is_field_base:
        # informational: the unmasked variant allows singular g as well
        singular = mat_rank(transcript.g) < spec.n
        print(f"g is {'singular' if singular else 'invertible'}", file=sys.stderr)
    with open(args.out, "w") as fh:
        fh.write(transcript_to_json(transcript))
    with open(args.secrets, "w") as fh:
        fh.write(kex.secrets_to_json(spec, secrets))
    return 0


def cmd_attack(args) -> int:
    try:
        with open(args.transcript) as fh:
            transcript = transcript_from_json(fh.read())
    except (OSError, ValueError) as e:
        return _fail_usage(f"cannot read transcript: {e}")
    try:
        report = run_attack(args.method, transcript)
    except ValueError as e:
        return _fail_usage(str(e))
    with open(args.report, "w") as fh:
        fh.write(report_to_json(transcript.platform, report))
    return 0 if report.success else 1


def cmd_check(args) -> int:
    try:
        with open(args.report) as fh:
            report = report_from_json(fh.read())
        with open(args.secrets) as fh:
            _, _, true_key_enc = secrets_from_json(fh.read())
    except (OSError, ValueError) as e:
        return _fail_usage(f"cannot read inputs: {e}")
    if not report["success"] or report["key"] is None:
        return 1
    import json

    same = json.dumps(report["key"], separators=(",", ":")) == json.dumps(
        true_key_enc, separators=(",", ":")
    )
    return 0 if same else 1


def cmd_bench(args) -> int:
    print("trial session_ms offline_basis_ms express_ms assemble_ms online_ms status")
    online_list, offline_list = [], []
    ok = 0
    for trial in range(1, args.trials + 1):
        t0 = time.perf_counter()
        try:
            spec, transcript, secrets = _simulate_once(args, args.seed + trial)
        except ValueError as e:
            return _fail_usage(str(e))
        session_ms = (time.perf_counter() - t0) * 1000
        # re-parse so the attack sees exactly what an eavesdropper has
        public = transcript_from_json(transcript_to_json(transcript))
        try:
            report = run_attack(args.method, public)
        except ValueError as e:
            return _fail_usage(str(e))
        basis_ms = report.phases.get("basis", 0.0) * 1000
        express_ms = report.phases.get("express", 0.0) * 1000
        assemble_ms = report.phases.get("assemble", 0.0) * 1000
        online_ms = express_ms + assemble_ms
        good = report.success and report.recovered_key == secrets.true_key
        ok += good
        online_list.append(online_ms)
        offline_list.append(basis_ms)
        status = "ok" if good else "fail"
        print(
            f"{trial} {session_ms:.3f} {basis_ms:.3f} {express_ms:.3f} "
            f"{assemble_ms:.3f} {online_ms:.3f} {status}"
        )
    med_on = statistics.median(online_list) if online_list else 0.0
    med_off = statistics.median(offline_list) if offline_list else 0.0
    print(
        f"# summary platform={args.platform} method={args.method} trials={args.trials} "
        f"ok={ok} median_offline_basis_ms={med_off:.3f} median_online_ms={med_on:.3f}"
    )
    return 0


def cmd_selftest(args) -> int:
    from .field import field_spec
    from .platform import mat_mul, mat_pow

    failures = 0

    def check(name, fn):
        nonlocal failures
        try:
            fn()
            print(f"selftest {name}: ok")
        except Exception as e:  # noqa: BLE001 - report and continue
            failures += 1
            print(f"selftest {name}: FAIL ({e})")

    def field_axioms():
        rng = random.Random(0)
        for F in (field_spec(7), field_spec(2, 127)):
            for _ in range(200):
                a, b, c = (F.random_raw(rng) for _ in range(3))
                assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                if a != F.zero_raw:
                    assert F.mul(a, F.inv(a)) == F.one_raw

    def closed_form():
        spec, phi, g = presets.make_instance("toy:7,1,2", False, 11)
        HM = mat_mul(phi.H, g)
        for k in range(1, 20):
            ak = kex.orbit_element(g, phi, k)
            assert ak == mat_mul(mat_pow(phi.H_inv, k), mat_pow(HM, k))

    def end_to_end():
        for name, masked, method in (
            ("kls2x2", False, "conjugation"),
            ("kls2x2", True, "masked"),
            ("toy:7,1,2", False, "general"),
            ("toy:7,1,2", False, "commutant"),
        ):
            seed = 5
            spec, phi, g = presets.make_instance(name, masked, seed)
            if method == "commutant":
                # invertible g guarantees an invertible commutant solution
                while mat_rank(g) < spec.n:
                    seed += 1
                    spec, phi, g = presets.make_instance(name, masked, seed)
            t, s = run_session(spec, phi, g, 23, 45, masked, 6)
            pub = transcript_from_json(transcript_to_json(t))
            rep = run_attack(method, pub)
            assert rep.success and rep.recovered_key == s.true_key, name

    check("field-axioms", field_axioms)
    check("orbit-closed-form", closed_form)
    check("attack-end-to-end", end_to_end)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncshift",
        description="noncommutative-shift key exchange workbench: simulate sessions "
        "and recover keys from public transcripts",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_platform_opts(p):
        p.add_argument(
            "--platform",
            default="kls2x2",
            help="kls2x2 | kls2x2-power4 | hkks3x3 | toy:p,d,n",
        )
        p.add_argument("--masked", action="store_true", help="run the masked variant")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--exp-bound",
            type=int,
            default=2**64,
            help="private exponents are drawn uniformly from [2, bound]",
        )

    ps = sub.add_parser("simulate", help="run one honest session")
    add_platform_opts(ps)
    ps.add_argument("--out", required=True, help="transcript output path")
    ps.add_argument("--secrets", required=True, help="secrets output path")
    ps.set_defaults(fn=cmd_simulate)

    pa = sub.add_parser("attack", help="recover the key from a transcript")
    pa.add_argument("transcript", help="transcript file to attack")
    pa.add_argument("--method", required=True, choices=METHODS)
    pa.add_argument("--report", required=True, help="attack report output path")
    pa.set_defaults(fn=cmd_attack)

    pc = sub.add_parser("check", help="compare a report against session secrets")
    pc.add_argument("report")
    pc.add_argument("secrets")
    pc.set_defaults(fn=cmd_check)

    pb = sub.add_parser("bench", help="timing trials for one platform/method pair")
    add_platform_opts(pb)
    pb.add_argument("--method", required=True, choices=METHODS)
    pb.add_argument("--trials", type=int, default=10)
    pb.set_defaults(fn=cmd_bench)

    pt = sub.add_parser("selftest", help="quick deterministic smoke checks")
    pt.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
