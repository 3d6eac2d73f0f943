"""The episodic reset/step interface, in both action layers.

Run: python demos/04_gym_loop.py
"""
from gridrts import CompoundAction, Environment
from gridrts.agents import random_agent
from gridrts.rng import SplitMix64

# Layer 1: 16 primitive actions, random policy on the harvesting drill
env = Environment("solo-resources", seed=1)
obs = env.reset()
print("spaces:", env.describe_spaces())
rng = SplitMix64(3)
total = 0.0
done = False
while not done:
    action = random_agent(env.state, 0, rng)
    obs, reward, done, info = env.step(action)
    total += reward
print(f"random primitives: episode reward {total:.0f} "
      f"(= harvested {info['players'][0]['harvested']}) in {info['tick']} ticks "
      "-- blind 16-action play rarely finds the deposits")

# Layer 2: 6 compound actions; one intent per decision
env = Environment("solo-resources", seed=1, action_layer="compound")
env.reset()
total = 0.0
done = False
steps = 0
while not done:
    _, reward, done, info = env.step(CompoundAction.HARVEST_NEAREST_RESOURCE)
    total += reward
    steps += 1
print(f"compound harvesting: reward {total:.0f} in {steps} decisions")

# A full 2-player game against the built-in rule-based bot
env = Environment("15x15-2-FFA", seed=5, opponents=["rule_based"],
                  config={"tick_limit": 4000, "ticks_per_second": 2,
                          "auto_attack": True})
env.reset()
done = False
while not done:
    _, reward, done, info = env.step(random_agent(env.state, 0, SplitMix64(9)))
print(f"random vs rule_based: reward {reward:+.0f}, winner {info['winner']}, "
      f"tick {info['tick']}")
