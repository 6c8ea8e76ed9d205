# Copyright 2021 ecodeclub
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
命令行入口 bs。

单词用空白分隔的字母 a, A, t, T 表示，A = a^-1，T = t^-1，例如

    bs normalize --p 2 --q 3 -- "t a a a T"

退出码：0 成功，2 参数或单词错误，3 超出资源预算（会输出部分结果）。
日志写到 stderr，stdout 只有结果。
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from typing import TYPE_CHECKING, TextIO

from app.config.settings import settings
from app.domain.errors import BSGroupError, ResourceLimitError
from app.domain.group import GroupParams, Variant
from app.service.automata import count_accepted, export_edges
from app.service.group import BSGroupService
from app.service.report import format_rate
from app.utils.converters import GroupConverter
from app.utils.words import format_word, parse_word, pretty_form, pretty_word
from app.web.vo import (
    LengthResponse,
    LowerRateResponse,
    NormalizeResponse,
    PolyRateResponse,
    SeriesResponse,
    UpperRateResponse,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from app.domain.ball import BallTable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_SIZE_SUFFIXES = {"K": 1024, "M": 1024**2, "G": 1024**3, "T": 1024**4}


def _byte_size(text: str) -> int:
    """字节数，支持 K/M/G/T 后缀（1024 进制）"""
    text = text.strip().upper().removesuffix("B")
    factor = _SIZE_SUFFIXES.get(text[-1:], 1)
    digits = text[:-1] if factor != 1 else text
    try:
        value = int(digits) * factor
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"无法识别的字节数: {text!r}") from e
    if value <= 0:
        raise argparse.ArgumentTypeError("字节数必须为正")
    return value


def _write_csv(out: TextIO, header: list[str], rows: list[list[str]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _params(args: argparse.Namespace) -> GroupParams:
    return GroupParams(args.p, args.q)


def _word(args: argparse.Namespace) -> str:
    return " ".join(args.word)


def _rate(value: float, args: argparse.Namespace) -> str:
    digits = settings.report.digits if args.digits is None else args.digits
    return format_rate(value, digits)


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------


def cmd_normalize(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    params = _params(args)
    text = _word(args)
    forms = service.normal_forms(params, parse_word(text))
    if args.format == "json":
        response = NormalizeResponse(
            p=params.p,
            q=params.q,
            standard=GroupConverter.normal_form_to_vo(forms.standard),
            balanced=GroupConverter.normal_form_to_vo(forms.balanced),
            solvable=(
                GroupConverter.solvable_to_vo(forms.solvable)
                if forms.solvable is not None
                else None
            ),
        )
        print(response.model_dump_json(by_alias=True), file=out)
        return EXIT_OK

    if forms.standard.is_identity:
        print(f"{params}: identity", file=out)
    print(f"standard: {pretty_form(forms.standard)}", file=out)
    print(f"balanced: {pretty_form(forms.balanced)}", file=out)
    if forms.solvable is not None:
        nf = forms.solvable
        print(f"solvable: m={nf.m}, N={nf.N}, n={nf.n}", file=out)
    return EXIT_OK


def cmd_bounds(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    nf, bounds, exact = service.bounds(
        _params(args),
        parse_word(_word(args)),
        args.exact_radius,
        memory_limit=args.memory_limit,
    )
    response = GroupConverter.bounds_to_vo(nf, bounds, exact)
    if args.format == "json":
        print(response.model_dump_json(by_alias=True), file=out)
        return EXIT_OK
    fields = ["p", "q", "estimate", "lower", "upper", "c1", "d1", "c2", "d2"]
    values = [str(nf.params.p), str(nf.params.q)] + [
        _rate(getattr(response, name), args) for name in fields[2:]
    ]
    _write_csv(
        out,
        [*fields, "exact_length"],
        [[*values, "" if exact is None else str(exact)]],
    )
    return EXIT_OK


def cmd_length(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    params = _params(args)
    text = _word(args)
    length = service.word_length(
        params,
        parse_word(text),
        args.max_radius,
        memory_limit=args.memory_limit,
    )
    if args.format == "json":
        response = LengthResponse(
            p=params.p,
            q=params.q,
            word=format_word(parse_word(text)),
            max_radius=args.max_radius,
            length=length,
        )
        print(response.model_dump_json(by_alias=True), file=out)
    elif length is None:
        print(f"not found (> {args.max_radius})", file=out)
    else:
        print(length, file=out)
    return EXIT_OK


def _print_sphere(
    table: BallTable, args: argparse.Namespace, out: TextIO
) -> None:
    if args.format == "json":
        response = GroupConverter.ball_to_vo(table)
        print(response.model_dump_json(by_alias=True), file=out)
        return
    _write_csv(
        out,
        ["radius", "sphere", "ball", "fekete"],
        [
            [
                str(row.radius),
                str(row.sphere),
                str(row.ball),
                "" if row.fekete is None else _rate(row.fekete, args),
            ]
            for row in table.rows()
        ],
    )


def cmd_sphere(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    try:
        table = service.sphere(
            _params(args),
            args.radius,
            memory_limit=args.memory_limit,
            threads=args.threads,
        )
    except ResourceLimitError as e:
        if e.partial is not None:
            _print_sphere(e.partial, args, out)
        raise
    _print_sphere(table, args, out)
    return EXIT_OK


def cmd_rate_lower(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    params = _params(args)
    variant = Variant(args.variant)
    rate = service.lower_rate(params, variant)
    if args.format == "json":
        response = LowerRateResponse(
            p=params.p, q=params.q, variant=variant, rate=rate
        )
        print(response.model_dump_json(by_alias=True), file=out)
    else:
        print(_rate(rate, args), file=out)
    return EXIT_OK


def cmd_rate_poly(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    params = _params(args)
    poly, root = service.poly_rate(params)
    if args.format == "json":
        response = PolyRateResponse(
            p=params.p, q=params.q, polynomial=poly.render(), rate=root
        )
        print(response.model_dump_json(by_alias=True), file=out)
    else:
        print(f"P(x) = {poly.render()}", file=out)
        print(_rate(root, args), file=out)
    return EXIT_OK


def cmd_rate_upper(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    params = _params(args)
    sphere, rate = service.upper_rate(
        params,
        args.radius,
        memory_limit=args.memory_limit,
        threads=args.threads,
    )
    if args.format == "json":
        response = UpperRateResponse(
            p=params.p, q=params.q, radius=args.radius, sphere=sphere, rate=rate
        )
        print(response.model_dump_json(by_alias=True), file=out)
    else:
        print(f"sphere({args.radius}) = {sphere}", file=out)
        print(_rate(rate, args), file=out)
    return EXIT_OK


def cmd_series(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    expansion = service.series(
        args.p,
        args.n,
        args.check_bfs,
        memory_limit=args.memory_limit,
        threads=args.threads,
    )
    singularity = expansion.singularity
    if args.format == "json":
        response = SeriesResponse(
            p=args.p,
            numerator=expansion.series.numerator.render("z"),
            denominator=expansion.series.denominator.render("z"),
            coefficients=list(expansion.coefficients),
            singularity=singularity.radius,
            growth_rate=singularity.growth_rate,
            bfs_spheres=(
                list(expansion.bfs_spheres)
                if expansion.bfs_spheres is not None
                else None
            ),
            matches_bfs=expansion.matches_bfs,
        )
        print(response.model_dump_json(by_alias=True), file=out)
        return EXIT_OK

    spheres = expansion.bfs_spheres
    header = ["n", "coefficient"] + (["bfs_sphere"] if spheres else [])
    rows = [
        [str(k), str(c)] + ([str(spheres[k])] if spheres else [])
        for k, c in enumerate(expansion.coefficients)
    ]
    _write_csv(out, header, rows)
    logger.info(
        f"主奇点 {_rate(singularity.radius, args)}，"
        f"增长率 {_rate(singularity.growth_rate, args)}"
    )
    return EXIT_OK


def cmd_tables(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    rows = service.tables(
        args.max_q,
        args.min_p,
        args.fekete_radius,
        memory_limit=args.memory_limit,
        threads=args.threads,
    )
    report = settings.report
    digits = report.digits if args.digits is None else args.digits
    if args.format == "json":
        response = GroupConverter.report_to_vo(
            rows,
            digits=digits,
            paper_digits=(
                (report.standard_digits, report.balanced_digits)
                if args.paper_precision
                else None
            ),
        )
        print(response.model_dump_json(by_alias=True), file=out)
        return EXIT_OK

    header = [
        "p",
        "q",
        "standard",
        "balanced",
        "poly_root",
        "fekete_upper",
        "exact_rate",
    ]
    formatted = [
        service.format_row(
            row, paper_precision=args.paper_precision, digits=digits
        )
        for row in rows
    ]
    _write_csv(out, header, [[row[k] for k in header] for row in formatted])
    return EXIT_OK


def cmd_automaton(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    params = _params(args)
    variant = Variant(args.variant)
    automaton = service.automaton(params, variant)
    words = None
    if args.words is not None:
        words = service.accepted_words(params, variant, args.words)
    if args.format == "json":
        response = GroupConverter.automaton_to_vo(
            automaton,
            service.lower_rate(params, variant),
            count_accepted(automaton, args.n),
            words,
        )
        print(response.model_dump_json(by_alias=True), file=out)
    elif words is not None:
        out.writelines(f"{pretty_word(w)}\n" for w in words)
    else:
        out.write(export_edges(automaton))
    return EXIT_OK


def cmd_serve(
    args: argparse.Namespace, service: BSGroupService, out: TextIO
) -> int:
    import uvicorn

    uvicorn.run(
        "app.main:app",
        host=args.host or settings.server.host,
        port=args.port or settings.server.port,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# 参数解析
# ---------------------------------------------------------------------------

def _add_group(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="BS(p,q) 的 p")
    parser.add_argument("--q", type=int, required=True, help="BS(p,q) 的 q")


def _add_word(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "word",
        nargs="*",
        help="空白分隔的 a A t T（A = a^-1, T = t^-1），建议放在 -- 之后",
    )


def _add_format(
    parser: argparse.ArgumentParser, choices: tuple[str, ...], default: str
) -> None:
    parser.add_argument("--format", choices=choices, default=default)


def _add_digits(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--digits",
        type=int,
        default=None,
        help=f"输出的小数位数（默认 {settings.report.digits}，银行家舍入）",
    )


def _add_bfs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--memory-limit",
        type=_byte_size,
        default=None,
        help="BFS 内存预算，例如 8G（默认取配置）",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="BFS 并行进程数，1 为顺序执行（默认取配置）",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bs",
        description=(
            "Baumslag–Solitar 群 BS(p,q) = <a,t | t a^p t^-1 = a^q> 的范式、"
            "词长度与增长率计算。单词记号：a, A = a^-1, t, T = t^-1。"
        ),
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v", "--verbose", action="store_true", help="输出 DEBUG 日志"
    )
    verbosity.add_argument(
        "-q", "--quiet", action="store_true", help="只输出 WARNING 以上日志"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(
        name: str, handler: Callable[..., int], help_text: str
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text, description=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = add("normalize", cmd_normalize, "计算单词的范式")
    _add_group(sub)
    _add_format(sub, ("text", "json"), "text")
    _add_word(sub)

    sub = add("bounds", cmd_bounds, "词长度的度量估计上下界")
    _add_group(sub)
    sub.add_argument(
        "--exact-radius",
        type=int,
        default=None,
        help="同时用 BFS 在此半径内计算精确长度",
    )
    _add_bfs(sub)
    _add_digits(sub)
    _add_format(sub, ("csv", "json"), "csv")
    _add_word(sub)

    sub = add("length", cmd_length, "BFS 计算精确词长度")
    _add_group(sub)
    sub.add_argument("--max-radius", type=int, required=True)
    _add_bfs(sub)
    _add_format(sub, ("text", "json"), "text")
    _add_word(sub)

    sub = add("sphere", cmd_sphere, "枚举 Cayley 图的球面大小")
    _add_group(sub)
    sub.add_argument("--radius", type=int, required=True)
    _add_bfs(sub)
    _add_digits(sub)
    _add_format(sub, ("csv", "json"), "csv")

    sub = add("rate-lower", cmd_rate_lower, "自动机谱半径给出的增长率下界")
    _add_group(sub)
    sub.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.BALANCED.value,
    )
    _add_digits(sub)
    _add_format(sub, ("text", "json"), "text")

    sub = add("rate-poly", cmd_rate_poly, "增长多项式的最大实根")
    _add_group(sub)
    _add_digits(sub)
    _add_format(sub, ("text", "json"), "text")

    sub = add("rate-upper", cmd_rate_upper, "球面计数给出的 Fekete 上界")
    _add_group(sub)
    sub.add_argument("--radius", type=int, required=True)
    _add_bfs(sub)
    _add_digits(sub)
    _add_format(sub, ("text", "json"), "text")

    sub = add("series", cmd_series, "BS(p,p) 生成函数的系数与主奇点")
    sub.add_argument("--p", type=int, required=True, choices=(2, 3))
    sub.add_argument("--n", type=int, required=True, help="展开到 z^n")
    sub.add_argument(
        "--check-bfs",
        action="store_true",
        help="同时用 BFS 计算 BS(p,p) 的球面大小并比较",
    )
    _add_bfs(sub)
    _add_digits(sub)
    _add_format(sub, ("csv", "json"), "csv")

    sub = add("tables", cmd_tables, "(p, q) 网格上的增长率界")
    sub.add_argument(
        "--max-q",
        type=int,
        default=settings.report.max_q,
        help=f"最大的 q（不超过配置值 {settings.report.max_q}）",
    )
    sub.add_argument("--min-p", type=int, default=2)
    sub.add_argument(
        "--fekete-radius",
        type=int,
        default=None,
        help="给出时每行附带该半径的 Fekete 上界",
    )
    sub.add_argument(
        "--paper-precision",
        action="store_true",
        help="标准列 5 位、平衡列 4 位小数，与印刷表格一致",
    )
    _add_bfs(sub)
    _add_digits(sub)
    _add_format(sub, ("csv", "json"), "csv")

    sub = add("automaton", cmd_automaton, "导出范式语言自动机")
    _add_group(sub)
    sub.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.BALANCED.value,
    )
    sub.add_argument(
        "--n", type=int, default=10, help="json 输出中计数的最大长度"
    )
    sub.add_argument(
        "--words",
        type=int,
        default=None,
        metavar="N",
        help="列出长度 <= N 的全部接受单词（数量受 automata.enumerate_cap 限制）",
    )
    _add_format(sub, ("edges", "json"), "edges")

    sub = add("serve", cmd_serve, "启动 HTTP 接口")
    sub.add_argument("--host", default=None)
    sub.add_argument("--port", type=int, default=None)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args)

    service = BSGroupService.create(settings)
    handler: Callable[[argparse.Namespace, BSGroupService, TextIO], int]
    handler = args.handler
    try:
        return handler(args, service, sys.stdout)
    except ResourceLimitError as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except BSGroupError as e:
        logger.debug("命令执行失败", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
