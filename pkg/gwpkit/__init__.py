# -*- coding: utf-8 -*-
"""Garling sequence space toolkit (gwpkit)."""

__version__ = '20261019'
