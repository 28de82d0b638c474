"""Pydantic 数据模型：函数、参数、报告。"""
