"""
Resilient Planner - minimum-violation multi-robot mission planning

Missions are Büchi automata over skill predicates; when robots lose skills
mid-mission the planner reallocates tasks and repairs the plan.
"""
__version__ = "1.0.0"
