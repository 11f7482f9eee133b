"""Logic analyzers module"""
