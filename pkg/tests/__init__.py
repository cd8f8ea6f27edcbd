"""Test suite for the agent toolkit."""