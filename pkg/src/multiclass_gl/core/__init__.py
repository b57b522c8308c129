"""
Core orchestration: experiments over datasets and image segmentation.
"""
