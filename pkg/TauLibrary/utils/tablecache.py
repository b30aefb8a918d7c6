# -*- coding: utf-8 -*-
from robot.utils import ConnectionCache


class TableCache(ConnectionCache):
    """Open tau tables by index and alias; closing a table drops its memoized entries."""

    def __init__(self):
        ConnectionCache.__init__(self, no_current_msg='No current tau table')
        self._closed = set()

    @property
    def tables(self):
        return self._connections

    def get_open_tables(self):
        return [table for table in self._connections if table not in self._closed]

    def close(self):
        if self.current is self._no_current:
            return
        table = self.current
        try:
            table.clear()
        finally:
            self.current = self._no_current
            self.current_index = None
            self._closed.add(table)

    def close_all(self):
        for table in self._connections:
            if table not in self._closed:
                table.clear()
                self._closed.add(table)
        self.empty_cache()
        return self.current
