# -*- coding: utf-8 -*-


"""Kernel export: plot-ready CSV and flat binary

Binary layout, little-endian: magic ``HLKM``, version (u32), N (u32),
t (f64), then the N*N values row-major as f64.
"""


import csv
import logging
import struct

import numpy as np

import hlk
from hlk import closed_form
from hlk import const


log = logging.getLogger('hlk-kernel-io')
HEADER = struct.Struct('<4sIId')


def envelope_column(kernel, c=1.):
    """Main envelope with constant *c* on the kernel grid"""
    points = kernel.grid.points
    return closed_form.envelope('main', closed_form.EnvelopeParams(c),
                                kernel.t, points[:, np.newaxis],
                                points[np.newaxis, :])


def write_kernel_csv(kernel, stream, c=1.):
    """Write rows x, y, k, env_main for every grid pair

    .. versionadded:: 0.1

    :param kernel: KernelMatrix
    :param stream: Open text stream
    :param c: Constant of the main envelope column
    """
    points = kernel.grid.points
    envelope = envelope_column(kernel, c)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(const.CSV_HEADER)
    for i, x in enumerate(points):
        for j, y in enumerate(points):
            writer.writerow([repr(float(x)), repr(float(y)),
                             repr(float(kernel.values[i, j])),
                             repr(float(envelope[i, j]))])
    log.debug('Wrote {} CSV rows'.format(len(points) ** 2))


def read_kernel_csv(stream):
    """Read a CSV written by :func:`write_kernel_csv`

    Returns a dict with the grid points and the kernel and envelope
    matrices.
    """
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != const.CSV_HEADER:
        raise hlk.InvalidArgument('Unexpected CSV header {!r}'.format(header))
    rows = np.array([[float(value) for value in row] for row in reader])
    size = int(round(np.sqrt(len(rows))))
    if size * size != len(rows):
        raise hlk.InvalidArgument('CSV does not hold a square kernel')
    return {
        'points': rows[::size, 0],
        'values': rows[:, 2].reshape(size, size),
        'env_main': rows[:, 3].reshape(size, size),
    }


def write_kernel_binary(kernel, stream):
    """Write the flat binary format to an open binary stream"""
    values = np.ascontiguousarray(kernel.values, dtype='<f8')
    stream.write(HEADER.pack(const.BINARY_MAGIC, const.BINARY_VERSION,
                             kernel.grid.N, float(kernel.t)))
    stream.write(values.tobytes(order='C'))


def read_kernel_binary(stream):
    """Read the flat binary format, returns a dict with t, N and values"""
    header = stream.read(HEADER.size)
    if len(header) != HEADER.size:
        raise hlk.InvalidArgument('Truncated kernel header')
    magic, version, N, t = HEADER.unpack(header)
    if magic != const.BINARY_MAGIC:
        raise hlk.InvalidArgument('Bad magic {!r}'.format(magic))
    if version != const.BINARY_VERSION:
        raise hlk.InvalidArgument('Unsupported version {}'.format(version))
    payload = stream.read(8 * N * N)
    if len(payload) != 8 * N * N:
        raise hlk.InvalidArgument('Truncated kernel payload')
    values = np.frombuffer(payload, dtype='<f8').reshape(N, N)
    return {'t': t, 'N': N, 'values': values.astype(float)}
