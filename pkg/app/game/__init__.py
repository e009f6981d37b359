# Game Module
