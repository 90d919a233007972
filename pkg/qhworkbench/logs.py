"""
Status-line logging to stderr.

Lines are prefixed with an emoji marker; trace lines appear only when
QHWORKBENCH_TRACE is enabled.
"""

import os
import sys


def _env_flag(name: str) -> bool:
    flag = os.getenv(name, "")
    return flag.strip().lower() in {"1", "true", "yes", "on"}


def is_trace_enabled() -> bool:
    """Return True if per-step construction traces are enabled."""
    return _env_flag("QHWORKBENCH_TRACE")


def is_quiet() -> bool:
    return _env_flag("QHWORKBENCH_QUIET")


def log_info(message: str) -> None:
    if not is_quiet():
        print(f"✅ {message}", file=sys.stderr)


def log_report(message: str) -> None:
    if not is_quiet():
        print(f"📊 {message}", file=sys.stderr)


def log_warning(message: str) -> None:
    if not is_quiet():
        print(f"⚠️ {message}", file=sys.stderr)


def log_error(message: str) -> None:
    print(f"❌ {message}", file=sys.stderr)


def log_trace(message: str) -> None:
    if is_trace_enabled():
        print(f"🔎 {message}", file=sys.stderr)
