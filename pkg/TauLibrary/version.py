# -*- coding: utf-8 -*-
VERSION = '0.2.0'
