"""
Command-line runner: simulate, audit, sweep, viscous-study and plot-data.

Exit codes: 0 success, 1 ledger failure, 2 usage or configuration error.
"""
import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from dotenv import load_dotenv

# Add project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from analysis import LedgerReport, audit_trajectory, viscous_convergence
from criteria import PlasticityError
from integrator import SimConfig, Trajectory, simulate
from utils import (
    MANIFEST_FILE,
    TRAJECTORY_FILE,
    ConfigError,
    RunLogger,
    RunManifest,
    RunResult,
    __version__,
    config_to_dict,
    events_path,
    load_config,
    measure_execution,
    parse_config_dict,
    read_manifest,
    read_trajectory,
    set_config_value,
    work_path,
    write_manifest,
    write_trajectory,
)

EXIT_OK = 0
EXIT_LEDGER_FAILURE = 1
EXIT_USAGE = 2

PLOT_COLUMNS = ["t", "eps", "eps_p", "E_tot", "sigma"]


class SimulationRunner:
    """Runs configured simulations and writes self-describing run directories."""

    def __init__(self, results_dir: Optional[str] = None, threads: Optional[int] = None,
                 log_level: Optional[str] = None):
        load_dotenv()

        # Configuration
        self.results_dir = Path(results_dir or os.getenv('NONSMOOTH_PLAST_RESULTS', 'results'))
        self.threads = threads or int(os.getenv('NONSMOOTH_PLAST_THREADS', os.cpu_count() or 1))
        self.log_level = log_level or os.getenv('NONSMOOTH_PLAST_LOG_LEVEL', 'INFO')

        self.logger = RunLogger(str(self.results_dir), self.log_level)

    def run_single(self, config: SimConfig, out_dir: Path, label: str = "run",
                   log_to_file: bool = True) -> Tuple[RunResult, Trajectory, LedgerReport]:
        """Simulate, audit and write trajectory, events and manifest into ``out_dir``."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        handler = self.logger.attach_run_file(out_dir) if log_to_file else None
        try:
            traj, execution_time, memory_usage = measure_execution(simulate, config)
            report = audit_trajectory(traj, config.model, config.tolerances)

            csv_path = write_trajectory(traj, out_dir / TRAJECTORY_FILE)
            manifest = RunManifest(
                config=config_to_dict(config),
                artifacts={
                    "trajectory": csv_path.name,
                    "events": events_path(csv_path).name,
                    "work": work_path(csv_path).name,
                },
                version=__version__,
                wall_clock_seconds=execution_time,
                memory_delta_mb=memory_usage,
                ledger=report.summary(),
                created_at=datetime.now().isoformat(timespec="seconds"),
            )
            write_manifest(manifest, out_dir / MANIFEST_FILE)

            result = RunResult(
                label=label,
                regime=config.model.regime.value,
                n_samples=len(traj),
                n_events=len(traj.events),
                ledger_passed=report.passed,
                failed_clauses=report.failed_clauses,
                D_cum=float(traj.column("D_cum")[-1]) if len(traj) else 0.0,
                execution_time=execution_time,
                memory_usage=memory_usage,
                out_dir=str(out_dir),
            )
            self.logger.log_run(result)
        finally:
            if handler is not None:
                self.logger.detach(handler)
        return result, traj, report

    def audit_run(self, run_dir: Path) -> LedgerReport:
        """Re-verify a run directory from its manifest and CSV files alone."""
        run_dir = Path(run_dir)
        manifest = read_manifest(run_dir / MANIFEST_FILE)
        config = parse_config_dict(manifest.config)
        traj = read_trajectory(run_dir / manifest.artifacts.get("trajectory", TRAJECTORY_FILE))
        traj.loading = config.loading
        traj.viscosity = config.viscosity
        return audit_trajectory(traj, config.model, config.tolerances)

    def _sweep_one(self, base: dict, param: str, value: float, out_root: Path) -> RunResult:
        label = f"{param.replace('.', '_')}={value:g}"
        try:
            config = parse_config_dict(set_config_value(base, param, value))
            result, _, _ = self.run_single(config, out_root / label, label=label,
                                           log_to_file=False)
        except PlasticityError as e:
            result = RunResult(label=label, regime=str(base["material"]["regime"]),
                               n_samples=0, n_events=0, ledger_passed=False,
                               error_message=str(e))
            self.logger.log_run(result)
        return result

    def sweep(self, config: SimConfig, param: str, values: Sequence[float],
              out_root: Path) -> List[RunResult]:
        """One run per value of ``param``, on a thread pool capped by ``self.threads``."""
        out_root = Path(out_root)
        out_root.mkdir(parents=True, exist_ok=True)
        base = config_to_dict(config)
        # fail early on an unknown key
        set_config_value(base, param, values[0] if values else 0.0)

        handler = self.logger.attach_run_file(out_root)
        try:
            workers = max(1, min(self.threads, len(values)))
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(
                    lambda value: self._sweep_one(base, param, value, out_root), values))
        finally:
            self.logger.detach(handler)

        self.logger.save_results_csv("sweep_summary.csv", directory=out_root, results=results)
        return results


def _print_report(report: LedgerReport, key_values: bool):
    if key_values:
        sys.stdout.write(report.to_key_values())
    else:
        print(report.to_text())


def cmd_simulate(runner: SimulationRunner, args) -> int:
    config = load_config(args.config)
    out_dir = Path(args.out) if args.out else runner.results_dir / Path(args.config).stem
    result, _, report = runner.run_single(config, out_dir, label=Path(args.config).stem)
    status = "✓" if report.passed else "✗"
    print(f"{status} {result.regime}: {result.n_samples} samples, {result.n_events} events, "
          f"D_cum={result.D_cum:.6g}, time={result.execution_time:.2f}s -> {out_dir}")
    if not report.passed:
        print(f"  Failed clauses: {', '.join(report.failed_clauses)}")
    return EXIT_OK if report.passed else EXIT_LEDGER_FAILURE


def cmd_audit(runner: SimulationRunner, args) -> int:
    try:
        report = runner.audit_run(Path(args.run_dir))
    except ValueError as e:
        # unreadable cells or columns in the run files
        print(f"✗ audit: {e}", file=sys.stderr)
        return EXIT_USAGE
    _print_report(report, args.key_values)
    return EXIT_OK if report.passed else EXIT_LEDGER_FAILURE


def cmd_sweep(runner: SimulationRunner, args) -> int:
    config = load_config(args.config)
    if args.threads:
        runner.threads = args.threads
    results = runner.sweep(config, args.param, args.values, Path(args.out))
    runner.logger.print_summary()
    if any(r.error_message for r in results):
        return EXIT_USAGE
    return EXIT_OK if all(r.ledger_passed for r in results) else EXIT_LEDGER_FAILURE


def cmd_viscous_study(runner: SimulationRunner, args) -> int:
    config = load_config(args.config)
    table = viscous_convergence(config, args.etas)
    print(table.to_text())
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        table.to_frame().to_csv(out_dir / "viscous_convergence.csv", index=False,
                                float_format="%.17g")
    mark = "✓" if table.is_monotone else "✗"
    print(f"{mark} deviation decreases monotonically with eta")
    return EXIT_OK


def cmd_plot_data(runner: SimulationRunner, args) -> int:
    if args.run:
        out_dir = Path(args.run)
        traj = read_trajectory(out_dir / TRAJECTORY_FILE)
    else:
        if not args.out:
            raise ConfigError("plot-data --config needs --out")
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        traj = simulate(load_config(args.config))
    path = out_dir / "plot_data.csv"
    traj.to_frame()[PLOT_COLUMNS].to_csv(path, index=False, float_format="%.17g")
    print(f"✓ plot data ({len(traj)} rows) -> {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run_simulation.py",
        description="Nonsmooth elastoplastic material point: simulation and ledger audits",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run_simulation.py simulate --config configs/perfect_free.json --out results/perfect
  python run_simulation.py audit results/perfect
  python run_simulation.py sweep --config configs/isotropic_cycling.json --param material.K --values 10 50 100 --out results/sweep_K
  python run_simulation.py viscous-study --config configs/perfect_cycling.json --etas 1e-1 1e-2 1e-3 1e-4
  python run_simulation.py plot-data --run results/perfect
        """
    )
    parser.add_argument('--results-dir', type=str, help='Default output root')
    parser.add_argument('--log-level', type=str, help='Logging level (DEBUG, INFO, ...)')
    sub = parser.add_subparsers(dest='command', required=True, metavar='command')

    p = sub.add_parser('simulate', help='Run one configuration and write a run directory')
    p.add_argument('--config', required=True, help='JSON config file')
    p.add_argument('--out', help='Run directory (default: <results-dir>/<config stem>)')
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser('audit', help='Re-verify a run directory')
    p.add_argument('run_dir', help='Directory written by simulate')
    p.add_argument('--key-values', action='store_true', help='Machine-readable key=value output')
    p.set_defaults(handler=cmd_audit)

    p = sub.add_parser('sweep', help='Run a parameter grid concurrently')
    p.add_argument('--config', required=True, help='Base JSON config file')
    p.add_argument('--param', required=True, help='Dotted config key, e.g. material.K')
    p.add_argument('--values', required=True, nargs='+', type=float, help='Values to run')
    p.add_argument('--out', required=True, help='Sweep output directory')
    p.add_argument('--threads', type=int, help='Worker threads (default: NONSMOOTH_PLAST_THREADS)')
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser('viscous-study', help='Vanishing-viscosity convergence table')
    p.add_argument('--config', required=True, help='JSON config file')
    p.add_argument('--etas', required=True, nargs='+', type=float, help='Viscosities, decreasing')
    p.add_argument('--out', help='Directory for viscous_convergence.csv')
    p.set_defaults(handler=cmd_viscous_study)

    p = sub.add_parser('plot-data', help='Four-panel plot series as CSV')
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--run', help='Existing run directory')
    source.add_argument('--config', help='JSON config file to simulate')
    p.add_argument('--out', help='Output directory when simulating from --config')
    p.set_defaults(handler=cmd_plot_data)
    return parser


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    runner = SimulationRunner(results_dir=args.results_dir, log_level=args.log_level)
    try:
        return args.handler(runner, args)
    except (PlasticityError, OSError) as e:
        print(f"✗ {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
