"""
Miscellaneous functions to manage the output paths.

Date: October 2026
Author: equicones developers
"""

import os.path
from datetime import datetime

from equicones import config


homedir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

CONF = config.get_conf_dict()
timestamp = datetime.now().strftime('%Y-%m-%d_%H%M%S')


def get_base_dir():
    base_dir = CONF['general']['base_directory']
    if os.path.isabs(base_dir):
        return base_dir
    else:
        return os.path.abspath(os.path.join(homedir, base_dir))


def get_output_dir():
    out_dir = CONF['general']['output_directory']
    if os.path.isabs(out_dir):
        return out_dir
    else:
        return os.path.join(get_base_dir(), out_dir)


def get_timestamped_dir():
    return os.path.join(get_output_dir(), timestamp)


def get_tables_dir():
    return os.path.join(get_timestamped_dir(), "tables")


def get_charts_dir():
    return os.path.join(get_timestamped_dir(), "charts")


def get_reports_dir():
    return os.path.join(get_timestamped_dir(), "reports")


def get_artifact_dir(fmt):
    """
    Folder of the timestamped run where an artifact of the given output format is written.
    """
    if fmt in ('svg', 'ascii'):
        return get_charts_dir()
    if fmt == 'csv':
        return get_tables_dir()
    return get_reports_dir()


def get_dirs():
    return {'base dir': get_base_dir(),
            'output dir': get_output_dir(),
            'timestamped dir': get_timestamped_dir(),
            'tables dir': get_tables_dir(),
            'charts dir': get_charts_dir(),
            'reports dir': get_reports_dir(),
            }


def create_dir_tree():
    """
    Create the timestamped run folders.
    """
    for d in [get_tables_dir(), get_charts_dir(), get_reports_dir()]:
        if not os.path.isdir(d):
            print('creating {}'.format(d))
            os.makedirs(d)


def print_dirs():
    dirs = get_dirs()
    max_len = max([len(v) for v in dirs.keys()])
    for k, v in dirs.items():
        print('{k:{l:d}s} {v:3s}'.format(l=max_len + 5, v=v, k=k))


def main():
    return print_dirs()


if __name__ == "__main__":
    main()
