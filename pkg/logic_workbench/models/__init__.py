"""Data models module"""
