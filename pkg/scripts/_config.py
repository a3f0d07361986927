"""Turn a dataclass of experiment settings into command-line flags."""

import argparse
import dataclasses


def parse_config(cls, description: str):
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, tuple):
            parser.add_argument(flag, type=lambda s: tuple(int(x) for x in s.split(",")),
                                default=default, help=f"comma-separated (default {default})")
        else:
            parser.add_argument(flag, type=type(default), default=default,
                                help=f"(default {default})")
    return cls(**vars(parser.parse_args()))
