# -*- coding: utf-8 -*-
"""Development utilities."""
