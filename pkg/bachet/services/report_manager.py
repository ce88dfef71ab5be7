import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO

import pandas as pd

from bachet.models import ClaimId, ClassReport, OutputFormat
from bachet.utils.helpers import format_signed

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['p', 'class', 'a_rep', 'N', 'b', 't', 'n', 'm', 'order3'] + [c.value for c in ClaimId]

# Колонки со знаковым следом Фробениуса
SIGNED_COLUMNS = ('b', 'b_twist')


class ReportManager:
    """Вывод строк отчёта в таблицу, CSV, JSONL или xlsx"""

    def __init__(self, fmt: OutputFormat = OutputFormat.TABLE):
        self.fmt = OutputFormat(fmt)

    def to_frame(self, rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> pd.DataFrame:
        df = pd.DataFrame(list(rows), columns=columns)
        for col in SIGNED_COLUMNS:
            if col in df.columns:
                df[col] = df[col].map(format_signed)
        return df

    def render(self, rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
        """Текст отчёта; для xlsx используется write с путём"""
        if self.fmt is OutputFormat.JSONL:
            return "".join(json.dumps(row, ensure_ascii=False) + "\n" for row in rows)

        df = self.to_frame(rows, columns)
        if self.fmt is OutputFormat.CSV:
            return df.to_csv(index=False, lineterminator="\n")
        if self.fmt is OutputFormat.TABLE:
            if df.empty:
                return "  ".join(map(str, df.columns)) + "\n"
            return df.to_string(index=False) + "\n"
        raise ValueError(f"Формат {self.fmt.value} выводится только в файл")

    def write(
        self,
        rows: Sequence[Dict[str, Any]],
        out: Optional[str] = None,
        columns: Optional[List[str]] = None,
        stream: Optional[TextIO] = None,
    ) -> None:
        """UTF-8, переводы строк LF; без out печать в stream (stdout)"""
        if self.fmt is OutputFormat.XLSX:
            if not out:
                raise ValueError("Формат xlsx требует --out")
            self.to_frame(rows, columns).to_excel(out, index=False, engine="openpyxl")
            logger.info(f"💾 Отчёт сохранён в {out}")
            return

        text = self.render(rows, columns)
        if out:
            with open(out, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            logger.info(f"💾 Отчёт сохранён в {out} ({len(rows)} строк)")
        else:
            (stream or sys.stdout).write(text)

    def write_reports(self, reports: Sequence[ClassReport], out: Optional[str] = None,
                      stream: Optional[TextIO] = None) -> None:
        if self.fmt is OutputFormat.JSONL:
            rows = [report.to_json_row() for report in reports]
        else:
            rows = [report.to_row() for report in reports]
        self.write(rows, out, columns=REPORT_COLUMNS, stream=stream)


def read_report(file_path: str) -> List[ClassReport]:
    """Обратное чтение отчёта verify из csv, jsonl или xlsx"""
    logger.info(f"📖 Чтение отчёта из файла: '{file_path}'")
    extension = os.path.splitext(file_path)[1].lower()

    if extension == '.jsonl':
        with open(file_path, 'r', encoding='utf-8') as f:
            rows = [json.loads(line) for line in f if line.strip()]
    elif extension == '.csv':
        rows = pd.read_csv(file_path, dtype=str, keep_default_na=False).to_dict('records')
    elif extension in ('.xlsx', '.xls'):
        rows = pd.read_excel(file_path, dtype=str, engine="openpyxl").to_dict('records')
    else:
        raise ValueError(f"Неподдерживаемый формат: {extension}")

    return [ClassReport.from_row(row) for row in rows]
