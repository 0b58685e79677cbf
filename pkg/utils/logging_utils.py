"""
Logging utilities for simulation runs: console and JSON-lines handlers, run results.
"""
import logging
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import pandas as pd
import psutil
from pythonjsonlogger import jsonlogger

PACKAGE_LOGGER = "nonsmooth_plast"
CONSOLE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'
RUN_LOG_FILE = "run.log.jsonl"


@dataclass
class RunResult:
    """Outcome of one simulation run, as logged and summarized."""
    label: str
    regime: str
    n_samples: int
    n_events: int
    ledger_passed: bool
    failed_clauses: List[str] = field(default_factory=list)
    D_cum: float = 0.0
    execution_time: float = 0.0
    memory_usage: float = 0.0
    out_dir: Optional[str] = None
    error_message: Optional[str] = None


def measure_execution(func: Callable, *args, **kwargs) -> Tuple[Any, float, float]:
    """Run ``func`` and return (result, wall-clock seconds, RSS delta in MB)."""
    process = psutil.Process(os.getpid())
    start_time = time.time()
    start_memory = process.memory_info().rss / 1024 / 1024  # MB
    result = func(*args, **kwargs)
    execution_time = time.time() - start_time
    memory_usage = process.memory_info().rss / 1024 / 1024 - start_memory
    return result, execution_time, memory_usage


def configure_console(level: str = "INFO") -> logging.Logger:
    """Attach one console handler to the package logger; idempotent."""
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    if not any(getattr(h, "_nonsmooth_console", False) for h in logger.handlers):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        console_handler._nonsmooth_console = True
        logger.addHandler(console_handler)
    return logger


class RunLogger:
    """Handles logging and storage of run results."""

    def __init__(self, results_dir: str = "results", level: str = "INFO"):
        self.results_dir = Path(results_dir)
        self.logger = configure_console(level)
        self.results: List[RunResult] = []

    def attach_run_file(self, run_dir: Path) -> logging.Handler:
        """Start mirroring package log records as JSON lines into ``run_dir``."""
        run_dir = Path(run_dir)
        run_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(run_dir / RUN_LOG_FILE, encoding="utf-8")
        file_handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
        self.logger.addHandler(file_handler)
        return file_handler

    def detach(self, handler: logging.Handler):
        self.logger.removeHandler(handler)
        handler.close()

    def log_run(self, result: RunResult):
        """Log a single run result."""
        self.results.append(result)
        self.logger.info(
            "run finished",
            extra={
                "label": result.label,
                "regime": result.regime,
                "n_events": result.n_events,
                "ledger_passed": result.ledger_passed,
                "execution_time": round(result.execution_time, 4),
            },
        )
        if result.error_message:
            self.logger.error(f"Run {result.label} failed: {result.error_message}")
        elif not result.ledger_passed:
            self.logger.warning(f"Ledger failed for {result.label}: {result.failed_clauses}")

    def to_frame(self, results: Optional[List[RunResult]] = None) -> pd.DataFrame:
        rows = self.results if results is None else results
        frame = pd.DataFrame([asdict(r) for r in rows])
        if "failed_clauses" in frame.columns:
            frame["failed_clauses"] = frame["failed_clauses"].map(lambda c: ";".join(c))
        return frame

    def save_results_csv(self, filename: str = "sweep_summary.csv",
                         directory: Optional[Path] = None,
                         results: Optional[List[RunResult]] = None) -> Path:
        """Save the run summaries to CSV, under the results directory by default."""
        directory = Path(directory) if directory is not None else self.results_dir
        directory.mkdir(parents=True, exist_ok=True)
        filepath = directory / filename
        self.to_frame(results).to_csv(filepath, index=False)
        self.logger.info(f"CSV summary saved to {filepath}")
        return filepath

    def generate_summary_stats(self) -> Dict[str, Any]:
        if not self.results:
            return {}
        df = self.to_frame()
        return {
            "total_runs": len(self.results),
            "ledger_pass_rate": float(df["ledger_passed"].mean()),
            "avg_events": float(df["n_events"].mean()),
            "avg_execution_time": float(df["execution_time"].mean()),
        }

    def print_summary(self):
        summary = self.generate_summary_stats()
        print("\n" + "=" * 60)
        print("RUN SUMMARY")
        print("=" * 60)
        print(f"Total Runs: {summary.get('total_runs', 0)}")
        print(f"Ledger Pass Rate: {summary.get('ledger_pass_rate', 0):.1%}")
        print(f"Average Events: {summary.get('avg_events', 0):.1f}")
        print(f"Average Execution Time: {summary.get('avg_execution_time', 0):.2f}s")
        for result in self.results:
            mark = "✓" if result.ledger_passed and not result.error_message else "✗"
            print(f"  {mark} {result.label}: {result.n_events} events, D_cum={result.D_cum:.6g}")
        print("=" * 60)
