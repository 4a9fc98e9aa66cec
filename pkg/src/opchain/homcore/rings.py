"""Exact coefficient rings: the integers, the rationals and prime fields."""
from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p):
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Z", "Q" or "Fp"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_field(self):
        return self.kind != "Z"

    @property
    def characteristic(self):
        return self.p if self.kind == "Fp" else 0

    def __call__(self, x):
        """Coerce an int, Fraction or decimal/"a/b" string into the ring."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                if self.kind == "Z":
                    raise ValueError(f"{x} is not an integer")
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            x = x.numerator
        if self.kind == "Z":
            return int(x)
        return int(x) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def is_unit(self, x):
        if self.kind == "Z":
            return x == 1 or x == -1
        return x != 0

    def inv(self, x):
        if self.kind == "Z":
            if x not in (1, -1):
                raise ZeroDivisionError(f"{x} is not a unit in Z")
            return x
        if self.kind == "Q":
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def normalize(self, x):
        if self.kind == "Fp":
            return x % self.p
        return x

    def to_str(self, x):
        return str(x)

    @property
    def label(self):
        """Serialization label: "Z", "Q" or "Fp:<p>"."""
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @property
    def short(self):
        """Command-line spelling: "Z", "Q", "F2", ..."""
        return f"F{self.p}" if self.kind == "Fp" else self.kind

    def __str__(self):
        return self.short

    @classmethod
    def parse(cls, text):
        t = str(text).strip()
        if t in ("Z", "ZZ"):
            return ZZ
        if t in ("Q", "QQ"):
            return QQ
        for prefix in ("Fp:", "F", "GF"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return GF(int(t[len(prefix):]))
        raise ValueError(f"cannot parse ring {text!r}")


ZZ = CoefficientRing("Z")
QQ = CoefficientRing("Q")


def GF(p):
    return CoefficientRing("Fp", p)
