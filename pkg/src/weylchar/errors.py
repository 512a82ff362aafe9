class BudgetExceeded(RuntimeError):
    """An enumeration or truncation budget was exceeded.

    Raised instead of silently degrading; the CLI maps this to exit code 3.
    """
