import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(results.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
