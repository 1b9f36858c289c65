"""Unified English TTS front-end."""
