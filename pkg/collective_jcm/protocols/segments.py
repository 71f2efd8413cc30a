import math

from beartype.typing import Dict, List, Optional, Union
from tensordict import TensorDict
import torch

from collective_jcm.dynamics.lindblad import lindblad_evolve
from collective_jcm.dynamics.propagate import StaticPropagator, propagate_timedep
from collective_jcm.dynamics.report import (CollapseChannel, StepConfig, expectation_values,
  make_traces)
from collective_jcm.hilbert.ladder import control_ops, mode_lowering, number_operator
from collective_jcm.hilbert.operator import Operator, TimeDependentOperator
from collective_jcm.hilbert.space import SpaceDescriptor
from collective_jcm.hilbert.states import DensityMatrix, PureState
from collective_jcm.protocols.result import ScheduleStep
from collective_jcm.torch_ops.linalg import real_dtype

State = Union[PureState, DensityMatrix]
Hamiltonian = Union[Operator, TimeDependentOperator]


def standard_observables(space:SpaceDescriptor, modes:List[int]) -> Dict[str, Operator]:
  """ P_e, P_g, Sz_c of the control atom and the total mode excitation n_b. """
  ops = control_ops(space)
  observables = dict(P_e=ops.excited, P_g=ops.ground, Sz_c=ops.sz)
  if len(modes) > 0:
    total = number_operator(space, modes[0])
    for i in modes[1:]:
      total = total + number_operator(space, i)
    observables['n_b'] = total
  return observables


class SegmentEvolver:
  """ Runs a schedule of evolution segments and instantaneous pulses under one Hamiltonian,
  concatenating the observable traces of every segment on a common time axis.

  Pure states evolve exactly (static H) or by RK4 (time-dependent H, with the interaction
  picture time carried across segments); with collapse channels the state is a density
  matrix evolved by the master equation.
  """

  def __init__(self, hamiltonian:Hamiltonian, observables:Dict[str, Operator],
               config:StepConfig = StepConfig(), channels:Optional[List[CollapseChannel]] = None,
               samples:int = 64, progress:bool = False):
    self.hamiltonian = hamiltonian
    self.observables = observables
    self.config = config
    self.channels = [c for c in (channels or []) if c.rate > 0]
    self.samples = samples
    self.progress = progress

    self.time = 0.
    self.schedule:List[ScheduleStep] = []
    self.traces:List[TensorDict] = []
    self.converged, self.reason = True, None
    self.steps = 0
    self.rate_bound = 0.

    self._propagator = None

  @property
  def mixed(self) -> bool:
    return len(self.channels) > 0

  def prepare(self, state:State) -> State:
    if self.mixed and isinstance(state, PureState):
      return state.to_density()
    return state

  def propagator(self) -> StaticPropagator:
    if self._propagator is None:
      self._propagator = StaticPropagator(self.hamiltonian)
    return self._propagator

  def _record(self, traces:TensorDict):
    if len(self.traces) > 0:
      traces = traces[1:]
    self.traces.append(traces)

  def _flag(self, converged:bool, reason:Optional[str]):
    if not converged and self.converged:
      self.converged, self.reason = False, reason

  def evolve(self, state:State, duration:float, **parameters) -> State:
    state = self.prepare(state)
    self.schedule.append(ScheduleStep('evolve', float(duration), parameters))

    if self.mixed:
      assert isinstance(self.hamiltonian, Operator), "master equation needs a static Hamiltonian"
      report = lindblad_evolve(self.hamiltonian, self.channels, state, duration,
        config=self.config, observables=self.observables, progress=self.progress)
      report.traces['t'] = report.traces['t'] + self.time
      final = report.final
      self._flag(report.converged, report.reason)
      self.steps += report.steps
      self.rate_bound = max(self.rate_bound, report.rate_bound)

    elif isinstance(self.hamiltonian, TimeDependentOperator):
      report = propagate_timedep(self.hamiltonian, state, duration, config=self.config,
        observables=self.observables, t0=self.time, progress=self.progress)
      final = report.final
      self._flag(report.converged, report.reason)
      self.steps += report.steps
      self.rate_bound = max(self.rate_bound, report.rate_bound)

    else:
      times = torch.linspace(0, float(duration), self.samples, dtype=real_dtype)
      amplitudes = self.propagator().evolve(state, times)
      final = PureState(state.space, amplitudes[-1])
      report = None
      self._record(make_traces(times + self.time, expectation_values(self.observables, amplitudes)))

    if report is not None:
      self._record(report.traces)

    self.time += float(duration)
    return final

  def pulse(self, state:State, unitary:Operator, **parameters) -> State:
    """ Instantaneous ideal gate U, rho -> U rho U+ for mixed states. """
    state = self.prepare(state)
    self.schedule.append(ScheduleStep('pulse', 0., parameters))
    if isinstance(state, PureState):
      return PureState(state.space, unitary.apply(state.amplitudes))

    u = unitary.dense
    return DensityMatrix(state.space, u @ state.matrix @ u.mH)

  def collected(self) -> Optional[TensorDict]:
    if len(self.traces) == 0:
      return None
    return torch.cat(self.traces, dim=0)


def rabi_frequency(times:torch.Tensor, signal:torch.Tensor) -> float:
  """ Angular frequency of the dominant oscillation of a sampled signal, from the
  first two crossings of its mean. """
  centred = signal - (signal.max() + signal.min()) / 2
  signs = torch.sign(centred)
  crossings = torch.nonzero(signs[1:] * signs[:-1] < 0).reshape(-1)
  if crossings.numel() < 2:
    return math.nan

  def crossing_time(i):
    t0, t1 = times[i].item(), times[i + 1].item()
    y0, y1 = centred[i].item(), centred[i + 1].item()
    return t0 + (t1 - t0) * y0 / (y0 - y1)

  half_period = crossing_time(crossings[1].item()) - crossing_time(crossings[0].item())
  return math.pi / half_period


def decoherence_channels(space:SpaceDescriptor, modes:List[int], gamma_eff:float,
                         kappa_eff:float) -> List[CollapseChannel]:
  """ Effective spontaneous emission gamma' on the control atom and on every collective
  mode, cavity loss kappa' on every collective mode. """
  lower = control_ops(space).lower
  channels = [CollapseChannel(lower, gamma_eff)]
  for i in modes:
    b = mode_lowering(space, i)
    channels += [CollapseChannel(b, gamma_eff), CollapseChannel(b, kappa_eff)]
  return channels
