"""
logging.py

This module provides a function to log benchmark campaigns into a plain-text
history file, including the cumulative number of fitness calls. All columns of
the best row (highest success rate) are logged dynamically.

Dependencies:
    - pandas as pd
    - datetime for timestamps

Functions:
    - log_campaign(df: pd.DataFrame, filename: str = "history.txt") -> None:
        Appends one line describing a campaign to a text file.
"""

import datetime

import pandas as pd

from differential_ga.core import ReportError

CUMULATIVE_MARKER = "Cumulative fitness calls all campaigns:"


def log_campaign(df: pd.DataFrame, filename: str = "history.txt") -> None:
    """
    Log all columns of the best row of a campaign, along with the campaign's
    fitness calls and the cumulative fitness calls, into a text file.

    Parameters:
    ----------
    df : pd.DataFrame
        Campaign rows (see ``bench.rows_to_frame``). Must include:
            - 'success_rate_pct' (float): Success rate of each row.
            - 'avg_nfc_success' (float): Average NFC of the successful runs.
            - 'total_nfc' (int): Fitness calls spent on each row.
    filename : str, optional
        The name of the text file to append to (default is "history.txt").

    Returns:
    -------
    None

    Raises:
    ------
    ValueError:
        If a required column is missing or the frame is empty.
    ReportError:
        If the history file cannot be written.
    """
    required_columns = {"success_rate_pct", "avg_nfc_success", "total_nfc"}
    if not required_columns.issubset(df.columns):
        missing = required_columns - set(df.columns)
        raise ValueError(f"DataFrame is missing required columns: {', '.join(sorted(missing))}")
    if df.empty:
        raise ValueError("Cannot log an empty campaign.")

    total_nfc = int(df["total_nfc"].sum())
    cumulative_nfc = 0

    # Read the cumulative count from the last line if the file exists
    try:
        with open(filename, "r") as file:
            lines = file.readlines()
            if lines and CUMULATIVE_MARKER in lines[-1]:
                cumulative_nfc = int(lines[-1].split(CUMULATIVE_MARKER)[-1].strip())
    except FileNotFoundError:
        pass

    cumulative_nfc += total_nfc

    # Highest success rate first, ties by the smallest average NFC (NaN last)
    ranked = df.sort_values(
        ["success_rate_pct", "avg_nfc_success"],
        ascending=[False, True],
        na_position="last",
        kind="mergesort",
    )
    best_row = ranked.iloc[0]

    timestamp = datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    column_values = ", ".join([f"{col}: {best_row[col]}" for col in df.columns])
    log_entry = (
        f"{timestamp} - {column_values}, "
        f"Total fitness calls campaign: {total_nfc}, "
        f"{CUMULATIVE_MARKER} {cumulative_nfc}\n"
    )

    try:
        with open(filename, "a") as file:
            file.write(log_entry)
    except OSError as err:
        raise ReportError(f"Cannot append to history file {filename}: {err}", str(filename)) from err
