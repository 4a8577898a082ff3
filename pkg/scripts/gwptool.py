#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Console script of the Garling sequence space toolkit."""

import sys

from gwpkit import cli


if __name__ == '__main__':
  sys.exit(cli.Main())
