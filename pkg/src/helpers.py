import os
from fractions import Fraction


def print_h_bar():
    print("--------------------------------------------------------------------")


def colors_enabled() -> bool:
    return not os.getenv("NO_COLOR")


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator} (~{float(value):.2f})"


def fraction_to_dict(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def fraction_from_dict(data: dict) -> Fraction:
    return Fraction(data["num"], data["den"])
