#!/usr/bin/env python3
"""
Simple setup validation for the nonsmooth plasticity simulator.
Checks dependencies, environment settings, and a short smoke run.
"""
import os
import sys
from pathlib import Path


def check_dependencies():
    """Check if required packages are installed."""
    required = ['numpy', 'scipy', 'pandas', 'pydantic', 'dotenv', 'pythonjsonlogger', 'psutil']
    missing = []

    for package in required:
        try:
            __import__(package)
            print(f"✅ {package}")
        except ImportError:
            missing.append(package)
            print(f"❌ {package}")

    return missing


def check_env_setup():
    """Check environment configuration."""
    env_file = Path('.env')
    if not env_file.exists():
        print("⚠️  .env file not found, using defaults")
        print("   Optional: cp .env.template .env")
    else:
        print("✅ .env file exists")

    from dotenv import load_dotenv
    load_dotenv()

    threads = os.getenv('NONSMOOTH_PLAST_THREADS')
    if threads is not None and not threads.isdigit():
        print(f"❌ NONSMOOTH_PLAST_THREADS must be a positive integer, got {threads!r}")
        return False
    print(f"✅ Sweep threads: {threads or os.cpu_count()}")
    print(f"✅ Results directory: {os.getenv('NONSMOOTH_PLAST_RESULTS', 'results')}")
    print(f"✅ Log level: {os.getenv('NONSMOOTH_PLAST_LOG_LEVEL', 'INFO')}")
    return True


def test_basic_functionality():
    """Run a short perfect-plastic trajectory and audit it."""
    try:
        sys.path.append(os.path.dirname(os.path.abspath(__file__)))
        from analysis import audit_trajectory
        from integrator import SimConfig, simulate
        from models import MaterialModel, MaterialState

        model = MaterialModel(E=30.0, m=0.82, sigma_Y0=1.0)
        config = SimConfig(model=model, dt=1e-4, t_end=1.0, stride=10, initial=MaterialState(eps=1.0))
        report = audit_trajectory(simulate(config), model, config.tolerances)
        if report.passed:
            print("✅ Smoke run audited cleanly")
            return True
        print(f"❌ Smoke run ledger failed: {report.failed_clauses}")
        return False

    except Exception as e:
        print(f"❌ Smoke run failed: {e}")
        return False


def main():
    """Run all setup checks."""
    print("🔍 Nonsmooth Plasticity Setup Check")
    print("=" * 40)

    print("\n📦 Dependencies:")
    missing = check_dependencies()

    if missing:
        print(f"\n❌ Missing packages: {', '.join(missing)}")
        print("   Install with: pip install -r requirements.txt")
        return False

    print("\n🔧 Environment:")
    env_ok = check_env_setup()

    print("\n🧪 Functionality:")
    func_ok = test_basic_functionality()

    print("\n" + "=" * 40)
    if not env_ok:
        print("⚠️  Setup partial - fix the environment settings above")
    elif func_ok:
        print("✅ Setup complete - ready to run simulations!")
    else:
        print("❌ Setup complete but the smoke run failed")

    print("\n🚀 Next steps:")
    print("   python run_simulation.py simulate --config configs/perfect_free.json --out results/perfect")
    print("   python -m pytest")

    return env_ok and func_ok


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
