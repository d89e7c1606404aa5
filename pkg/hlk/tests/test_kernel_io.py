# -*- coding: utf-8 -*-


"""Test kernel export formats"""


import io
import struct
import unittest

import numpy as np

import hlk
from hlk import closed_form
from hlk import const
from hlk import grid
from hlk import kernel_io


class KernelCSVTest(unittest.TestCase):
    def setUp(self):
        self.kernel = closed_form.closed_form_kernel(0.5, grid.make_grid(2.,
                                                                         4))

    def test_header_and_rows(self):
        stream = io.StringIO()
        kernel_io.write_kernel_csv(self.kernel, stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == ','.join(const.CSV_HEADER)
        assert len(lines) == 1 + 16
        assert lines[1].split(',')[:2] == ['0.5', '0.5']

    def test_read_back(self):
        stream = io.StringIO()
        kernel_io.write_kernel_csv(self.kernel, stream, c=2.)
        stream.seek(0)
        data = kernel_io.read_kernel_csv(stream)
        np.testing.assert_array_equal(data['points'], self.kernel.grid.points)
        np.testing.assert_array_equal(data['values'], self.kernel.values)
        np.testing.assert_array_equal(
            data['env_main'], kernel_io.envelope_column(self.kernel, 2.))

    def test_kernel_below_envelope(self):
        envelope = kernel_io.envelope_column(self.kernel)
        assert np.all(self.kernel.values <= envelope)

    def test_bad_header(self):
        stream = io.StringIO('a,b,c,d\n1,2,3,4\n')
        self.assertRaises(hlk.InvalidArgument, kernel_io.read_kernel_csv,
                          stream)

    def test_not_square(self):
        stream = io.StringIO('x,y,k,env_main\n1,1,1,1\n1,2,1,1\n')
        self.assertRaises(hlk.InvalidArgument, kernel_io.read_kernel_csv,
                          stream)


class KernelBinaryTest(unittest.TestCase):
    def setUp(self):
        self.kernel = closed_form.closed_form_kernel(0.5, grid.make_grid(2.,
                                                                         4))

    def test_layout(self):
        stream = io.BytesIO()
        kernel_io.write_kernel_binary(self.kernel, stream)
        payload = stream.getvalue()
        assert len(payload) == 4 + 4 + 4 + 8 + 8 * 16
        magic, version, N, t = struct.unpack('<4sIId', payload[:20])
        assert (magic, version, N, t) == (b'HLKM', 1, 4, 0.5)
        first = struct.unpack('<d', payload[20:28])[0]
        assert first == self.kernel.values[0, 0]

    def test_read_back(self):
        stream = io.BytesIO()
        kernel_io.write_kernel_binary(self.kernel, stream)
        stream.seek(0)
        data = kernel_io.read_kernel_binary(stream)
        assert data['t'] == 0.5 and data['N'] == 4
        np.testing.assert_array_equal(data['values'], self.kernel.values)

    def test_bad_magic(self):
        stream = io.BytesIO(struct.pack('<4sIId', b'NOPE', 1, 1, 1.) +
                            b'\x00' * 8)
        self.assertRaises(hlk.InvalidArgument, kernel_io.read_kernel_binary,
                          stream)

    def test_bad_version(self):
        stream = io.BytesIO(struct.pack('<4sIId', b'HLKM', 9, 1, 1.) +
                            b'\x00' * 8)
        self.assertRaises(hlk.InvalidArgument, kernel_io.read_kernel_binary,
                          stream)

    def test_truncated(self):
        self.assertRaises(hlk.InvalidArgument, kernel_io.read_kernel_binary,
                          io.BytesIO(b'HLKM'))
        stream = io.BytesIO(struct.pack('<4sIId', b'HLKM', 1, 2, 1.) +
                            b'\x00' * 8)
        self.assertRaises(hlk.InvalidArgument, kernel_io.read_kernel_binary,
                          stream)
