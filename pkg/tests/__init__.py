"""Mulambda Tests"""
