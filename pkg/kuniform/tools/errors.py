# errors.py

class KUniformError(Exception):
    """
    Base class for every error raised by the kuniform package.

    Attributes:
        exit_code (int): Exit status the command-line driver uses when this
            error reaches it. 2 for usage/parse problems, 3 for budget/cap problems.
    """
    exit_code = 2


class PauliParseError(KUniformError, ValueError):
    """Text does not match `[+|-|+i|-i]?[IXYZ]+`."""


class PauliSizeError(KUniformError, ValueError):
    """Two Pauli words acting on different numbers of qubits were combined."""


class GraphFormatError(KUniformError, ValueError):
    """Malformed graph file, out-of-range vertex, self-loop or duplicate edge."""


class FamilyParameterError(KUniformError, ValueError):
    """Family parameter below the bound the construction needs."""


class BudgetExceededError(KUniformError):
    """
    Subset enumeration needs more products than the allowed budget.

    Args:
        required (int): Number of subsets the requested search would enumerate.
        budget (int): The budget in force.
    """
    exit_code = 3

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"search needs {required} subsets but the budget is {budget}; "
                         f"raise the budget to at least {required}")


class CapExceededError(KUniformError):
    """
    Dense computation requested above its qubit cap or step budget.

    Args:
        message (str): Description of the cap that was hit.
        n (int): Qubit count of the input.
        cap (int): Cap in force.
    """
    exit_code = 3

    def __init__(self, message: str, n: int = None, cap: int = None):
        self.n = n
        self.cap = cap
        super().__init__(message)
