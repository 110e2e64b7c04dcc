import argparse
from pathlib import Path

from pydantic import ValidationError

from src.config import settings
from src.logger import logger

from .. import __version__
from ..errors import KPartiteError
from ..schema import ResultEnvelope
from .commands import COMMANDS
from .config import load_run_config, resolve_path
from .output import write_envelope


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpartite",
        description="Времена переходов в K-дольной сети CSMA с жёсткими конфликтами",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="markdown-файл с YAML-фронтматтером")
    source.add_argument("--preset", help="имя пресета из presets/ (case1a … case3)")
    parser.add_argument("--nu", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--reps", type=int, dest="replications")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--space", choices=("star", "full"))
    parser.add_argument("--out", type=Path, default=None, help=f"каталог результатов (по умолчанию {settings.OUTPUT_DIR})")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        path = resolve_path(args.config, args.preset)
        overrides = {
            "nu": args.nu,
            "seed": args.seed,
            "replications": args.replications,
            "workers": args.workers,
            "space": args.space,
        }
        cfg = load_run_config(path, overrides)

        out_dir = (args.out or settings.output_path) / args.command
        out_dir.mkdir(parents=True, exist_ok=True)
        logger.info("Команда {}: {}, ν={:g}, seed={}", args.command, path.name, cfg.nu, cfg.seed)

        outputs, warnings = COMMANDS[args.command](cfg, out_dir)
        for warning in warnings:
            logger.warning(warning)

        envelope = ResultEnvelope(
            command=args.command,
            tool_version=__version__,
            seed=cfg.seed,
            config=cfg.model_dump(mode="json"),
            outputs=outputs,
            warnings=warnings,
        )
        report = write_envelope(out_dir, envelope)
        print(f"{'*' * 50}\nОтчёт: {report}")
        return 0

    except ValidationError as exc:
        logger.error("Некорректная конфигурация:\n{}", exc)
        return 2
    except KPartiteError as exc:
        logger.error("{}: {}", type(exc).__name__, exc)
        return exc.exit_code
