"""Pseudodistance lower bounds for linear codes over Z_q with q-ary PSK over AWGN."""

__version__ = "0.1.0"
