"""Trace-driven simulation of clients selecting caches through stale indicators."""

import csv
import hashlib
import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..cache.lru import LruCache
from ..cache.placement import PlacementPolicy
from ..errors import InvalidArgumentError
from ..filters.bloom import (
    BloomFilter,
    CountingBloomFilter,
    FilterParams,
    hash_pair,
    positions_from_pair,
)
from ..filters.staleness import delta_stats, estimate_fnr, estimate_fpr
from ..models.cost_ledger import CostLedger
from ..models.run_config import RunConfig
from ..strategy.beliefs import IndicatorAccuracy, PositiveRateEstimator
from ..strategy.hetero import (
    SOLVERS,
    AccessDecision,
    RequestContext,
    build_estimates,
    pgm_fna_decide,
    pgm_fno_decide,
    reduce_and_solve,
)
from .oracle import IndicationWindow, cache_aware_exclusion, pif_decide
from .workload import request_stream

logger = logging.getLogger(__name__)

EVENT_LOG_COLUMNS = ["request_index", "key", "decision_ids", "access_cost", "hit", "charged_cost"]


def derive_seeds(master_seed: int) -> Tuple[int, int, int]:
    """Filter hash seed, placement seed and workload seed from one master seed."""
    state = np.random.SeedSequence(master_seed).generate_state(3, dtype=np.uint64)
    hash_seed, placement_seed, workload_seed = (int(s) for s in state)
    return hash_seed, placement_seed, workload_seed


class CacheNode:
    """One cache: its LRU contents, counting filter, and the replica clients hold."""

    def __init__(
        self,
        cache_id: int,
        capacity: int,
        params: FilterParams,
        update_interval: int,
        accuracy_cadence: int,
    ):
        self.cache_id = cache_id
        self.params = params
        self.update_interval = update_interval
        self.accuracy_cadence = accuracy_cadence

        self.cbf = CountingBloomFilter(params)
        self.lru = LruCache(capacity, on_admit=self.cbf.insert, on_evict=self.cbf.remove)

        # What clients see
        self.replica = BloomFilter(params)
        self.accuracy = IndicatorAccuracy()

        self.insertions_since_advertisement = 0
        self.insertions_since_estimate = 0
        self.advertisements = 0

    def admit(self, key: bytes) -> bool:
        """Admit a missed item. Returns True when this triggered an advertisement."""
        self.lru.admit(key)
        self.insertions_since_advertisement += 1
        self.insertions_since_estimate += 1

        advertised = False
        if self.insertions_since_advertisement >= self.update_interval:
            self.advertise()
            advertised = True
        if self.insertions_since_estimate >= self.accuracy_cadence:
            self.reestimate_accuracy()
        return advertised

    def advertise(self):
        """Ship compress(CBF) to clients; the fresh replica comes with fresh accuracy."""
        payload = self.cbf.compress().to_bytes()
        self.replica = BloomFilter.from_bytes(payload, bpe=self.params.bpe)
        self.insertions_since_advertisement = 0
        self.advertisements += 1
        self.reestimate_accuracy()
        logger.debug(
            f"Cache {self.cache_id}: advertisement #{self.advertisements} "
            f"({len(payload)} bytes, fpr={self.accuracy.fpr:.5f})"
        )

    def reestimate_accuracy(self):
        """Recompute the replica's fpr/fnr from the diff against the current filter."""
        ds = delta_stats(self.replica, self.cbf.compress())
        k = self.params.num_hashes
        self.accuracy = IndicatorAccuracy(fpr=estimate_fpr(ds, k), fnr=estimate_fnr(ds, k))
        self.insertions_since_estimate = 0


class SimulationWorker:
    """Replays a request stream against N caches under one access policy."""

    def __init__(
        self,
        config: RunConfig,
        sweep_axis: str = "none",
        axis_value: Optional[float] = None,
    ):
        self.config = config
        self.sweep_axis = sweep_axis
        self.axis_value = axis_value

        hash_seed, placement_seed, self.workload_seed = derive_seeds(config.seed)
        self.placement = PlacementPolicy(config.num_caches, placement_seed)
        self.costs: List[float] = list(config.access_costs)
        self.solver = SOLVERS[config.solver]

        intervals = config.resolved_update_intervals()
        self.nodes = [
            CacheNode(
                cache_id=j,
                capacity=config.cache_capacities[j],
                params=FilterParams.for_capacity(config.cache_capacities[j], config.bpe, hash_seed),
                update_interval=intervals[j],
                accuracy_cadence=config.accuracy_cadence,
            )
            for j in range(config.num_caches)
        ]
        self.hash_seed = hash_seed

        # Client state, one entry per cache
        self.rate_estimators = [
            PositiveRateEstimator(config.ewma_horizon, config.ewma_delta, prior=node.accuracy.fpr)
            for node in self.nodes
        ]
        self.windows = [IndicationWindow() for _ in self.nodes]

        # Counters
        self.requests = 0
        self.total_access_cost = 0.0
        self.miss_count = 0
        self.hits = 0
        self.negative_accesses = 0
        self.insufficient_events = 0
        self.present_requests = 0
        self.false_negatives = 0
        self._warned_insufficient = False

    def indications_for(self, key: bytes) -> List[int]:
        """Query every cache's replica, hashing the key once per filter geometry."""
        g1, g2 = hash_pair(key, self.hash_seed)
        memo: Dict[Tuple[int, int], List[int]] = {}
        indications = []
        for node in self.nodes:
            geometry = (node.params.num_bits, node.params.num_hashes)
            positions = memo.get(geometry)
            if positions is None:
                positions = positions_from_pair(g1, g2, *geometry)
                memo[geometry] = positions
            indications.append(node.replica.query_positions(positions))
        return indications

    def decide(self, key: bytes, indications: Sequence[int]) -> Tuple[AccessDecision, int]:
        """Apply the configured policy. Returns the decision and the insufficient-accuracy count."""
        policy = self.config.policy
        if policy == "pif":
            return pif_decide(key, [n.lru for n in self.nodes], self.costs, self.config.miss_penalty), 0

        ctx = RequestContext(
            indications=indications,
            accuracies=[n.accuracy for n in self.nodes],
            positive_rates=[est.q for est in self.rate_estimators],
            access_costs=self.costs,
            miss_penalty=self.config.miss_penalty,
            solver=self.solver,
            oblivious_negatives=self.config.oblivious_negatives,
        )
        estimates, insufficient = build_estimates(ctx)

        if policy == "fna":
            return pgm_fna_decide(ctx, estimates), insufficient
        if policy == "fno":
            return pgm_fno_decide(ctx, estimates), insufficient
        if policy == "fna_star":
            measured = [
                cache_aware_exclusion(window, est)
                for window, est in zip(self.windows, estimates)
            ]
            if ctx.oblivious_negatives:
                measured = [
                    replace(m, mr_neg=est.mr_neg) for m, est in zip(measured, estimates)
                ]
            return (
                reduce_and_solve(indications, measured, self.costs, ctx.miss_penalty, self.solver),
                insufficient,
            )
        raise InvalidArgumentError(f"unknown policy {policy!r}")

    def step(self, index: int, key: bytes, charged: bool, event_writer=None):
        """Serve one request."""
        nodes = self.nodes
        indications = self.indications_for(key)
        holders = [j for j, node in enumerate(nodes) if node.lru.contains(key)]

        decision, insufficient = self.decide(key, indications)

        access_cost = 0.0
        hit = False
        negatives = 0
        for j in decision.ordered:
            access_cost += self.costs[j]
            if not indications[j]:
                negatives += 1
            if j in holders:
                hit = True
                nodes[j].lru.on_hit(key)

        for j, ind in enumerate(indications):
            self.rate_estimators[j].observe(ind)
            self.windows[j].record(ind, j in holders)

        if not hit:
            assigned = self.placement.assign_cache(key)
            node = nodes[assigned]
            # An unaccessed holder only has its recency refreshed
            if node.lru.contains(key):
                node.lru.on_hit(key)
            elif node.admit(key):
                self.windows[assigned].reset()

        if not charged:
            return

        self.requests += 1
        self.total_access_cost += access_cost
        self.negative_accesses += negatives
        if hit:
            self.hits += 1
        else:
            self.miss_count += 1
        if holders:
            self.present_requests += 1
            if any(not indications[j] for j in holders):
                self.false_negatives += 1
        if insufficient:
            self.insufficient_events += 1
            if not self._warned_insufficient:
                self._warned_insufficient = True
                logger.warning(
                    f"Request {index}: hit ratio not recoverable from reported accuracy "
                    f"for {insufficient} cache(s); falling back to q"
                )

        if event_writer is not None:
            charged_cost = access_cost + (0.0 if hit else self.config.miss_penalty)
            event_writer.writerow([
                index,
                key.decode("utf-8", errors="backslashreplace"),
                ";".join(str(j) for j in decision.ordered),
                f"{access_cost:.6f}",
                int(hit),
                f"{charged_cost:.6f}",
            ])

    def run(self) -> CostLedger:
        """Replay the whole workload and return the ledger."""
        config = self.config
        logger.info("=== Simulation Starting ===")
        logger.info(
            f"  Policy: {config.policy}, caches: {config.num_caches}, "
            f"costs: {self.costs}, miss penalty: {config.miss_penalty}"
        )
        logger.info(
            f"  Capacities: {config.cache_capacities}, bpe: {config.bpe}, "
            f"update intervals: {config.resolved_update_intervals()}"
        )

        checksum = hashlib.sha256()
        event_file = None
        event_writer = None
        if config.event_log_path:
            event_file = open(config.event_log_path, "w", newline="", encoding="utf-8")
            event_writer = csv.writer(event_file)
            event_writer.writerow(EVENT_LOG_COLUMNS)

        try:
            for index, key in enumerate(request_stream(config.workload, self.workload_seed)):
                checksum.update(key)
                checksum.update(b"\n")
                self.step(index, key, index >= config.warmup, event_writer)
        finally:
            if event_file is not None:
                event_file.close()

        ledger = CostLedger(
            policy=config.policy,
            seed=config.seed,
            sweep_axis=self.sweep_axis,
            axis_value=self.axis_value,
            stream_checksum=checksum.hexdigest()[:16],
            warmup=config.warmup,
            requests=self.requests,
            total_access_cost=self.total_access_cost,
            miss_count=self.miss_count,
            hits=self.hits,
            negative_accesses=self.negative_accesses,
            insufficiently_accurate_events=self.insufficient_events,
            present_requests=self.present_requests,
            false_negatives=self.false_negatives,
            miss_penalty=config.miss_penalty,
        )

        logger.info("=== Simulation Complete ===")
        logger.info(
            f"  Requests: {ledger.requests}, misses: {ledger.miss_count}, "
            f"mean cost: {ledger.mean_cost:.4f}, fn ratio: {ledger.fn_ratio:.4f}"
        )
        logger.info(f"  Advertisements: {[n.advertisements for n in self.nodes]}")
        return ledger


def run_simulation(
    config: RunConfig,
    sweep_axis: str = "none",
    axis_value: Optional[float] = None,
) -> CostLedger:
    """Run one simulation to completion."""
    return SimulationWorker(config, sweep_axis, axis_value).run()
