// Copyright 2026 The aerofetch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aerofetch/mission.hpp"

#include "aerofetch/config.hpp"
#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace aerofetch
{
namespace
{

constexpr std::size_t idx(MissionState s) { return static_cast<std::size_t>(s); }

// A move has arrived when within tolerance and nearly stopped.
constexpr double kSettledSpeed = 0.05;
constexpr double kSettledYaw = 0.05;
// Beyond this horizontal range the drone turns to look at its goal.
constexpr double kLookAtRange = 0.3;
// Live detections farther than this from the tracked estimate are ignored.
constexpr double kTrackGate = 0.25;
// Handover IBVS convergence.
constexpr double kFeatureTolPx = 5.0;
constexpr double kStandoffTol = 0.03;
// Gripper must be this close to the handover pose for a release to count.
constexpr double kReleaseTol = 0.1;

double point_segment_distance(const Vec3 & p, const Vec3 & a, const Vec3 & b)
{
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double point_segment_distance_xy(const Vec3 & p, const Vec3 & a, const Vec3 & b)
{
  return point_segment_distance({p.x, p.y, 0.0}, {a.x, a.y, 0.0}, {b.x, b.y, 0.0});
}

ErrorStats stats_of(std::span<const double> d)
{
  ErrorStats s;
  s.samples = d.size();
  if (d.empty()) {
    return s;
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double v : d) {
    s.max = std::max(s.max, v);
    sum += v;
    sum_sq += v * v;
  }
  s.mean = sum / static_cast<double>(d.size());
  s.rmse = std::sqrt(sum_sq / static_cast<double>(d.size()));
  return s;
}

std::vector<double> deviations_to(std::span<const Vec3> reference, std::span<const Vec3> achieved)
{
  std::vector<double> out;
  out.reserve(achieved.size());
  for (const auto & p : achieved) {
    double best = std::numeric_limits<double>::infinity();
    if (reference.size() == 1) {
      best = distance(p, reference.front());
    }
    for (std::size_t k = 1; k < reference.size(); ++k) {
      best = std::min(best, point_segment_distance(p, reference[k - 1], reference[k]));
    }
    out.push_back(best);
  }
  return out;
}

std::vector<Vec3> lift(const PlannedPath & path, double altitude)
{
  std::vector<Vec3> out;
  out.reserve(path.waypoints.size());
  for (const auto & w : path.waypoints) {
    out.push_back({w.x, w.y, altitude});
  }
  return out;
}

struct Feature
{
  double u{0.0};
  double v{0.0};
  double depth{1.0};
};

class MissionRunner
{
public:
  MissionRunner(const Scene & scene, const TaskQueue & queue, const MissionParams & params)
  : scene_(scene),
    objects_(scene.objects),
    queue_(queue),
    p_(params),
    cfg_(params.mission),
    rng_(params.mission.seed),
    selector_(params.servo_switch)
  {
  }

  MissionLog run()
  {
    drone_.pose = scene_.drone_home;
    log_.human_center = scene_.human.center;
    log_.human_planning_radius = scene_.human.body_radius + p_.planner.safety_margin;
    for (const auto & task : queue_) {
      log_.tasks.push_back({task.priority, describe(task.descriptor), {}, {}, {}, false});
    }
    if (queue_.empty()) {
      abort_mode_ = "empty-queue";
      transition(MissionState::Aborted, "empty task queue");
      return finish();
    }

    transition(MissionState::Takeoff, "mission start");
    while (!is_terminal(state_)) {
      if (drone_.t >= cfg_.max_mission_time) {
        abort_mode_ = std::string(kFailMissionTimeout);
        transition(MissionState::Aborted, "mission time limit");
        break;
      }
      update_perception();

      if (auto ev = check_safety(safety_context())) {
        on_safety_event(*ev);
      }
      if (is_terminal(state_)) {
        break;
      }

      const MissionState tick_state = state_;
      const int tick_leg = is_navigation(tick_state) ? leg_idx_ : -1;
      const VelocityCommand cmd = saturate(run_state(), p_.limits);

      drone_ = step_dynamics(drone_, cmd, cfg_.dt, p_.limits);
      carry_payload();

      TickRecord rec;
      rec.t = drone_.t;
      rec.state = tick_state;
      rec.leg = tick_leg;
      rec.pose = drone_.pose;
      rec.velocity = drone_.velocity;
      rec.gripper = drone_.gripper;
      rec.command = cmd;
      log_.ticks.push_back(rec);
    }
    return finish();
  }

private:
  // ---- bookkeeping ---------------------------------------------------------

  void event(std::string kind, std::string detail)
  {
    log_.events.push_back({drone_.t, std::move(kind), state_, std::move(detail)});
  }

  void transition(MissionState to, const std::string & reason)
  {
    if (!is_valid_transition(state_, to)) {
      throw std::logic_error(
        fmt::format("invalid mission transition {} -> {}", to_string(state_), to_string(to)));
    }
    log_.transitions.push_back({drone_.t, state_, to, reason});
    event("transition", fmt::format("{} -> {}: {}", to_string(state_), to_string(to), reason));
    state_ = to;
    state_entry_t_ = drone_.t;
    on_enter(to);
  }

  MissionLog finish()
  {
    log_.final_state = state_;
    const bool all_delivered = std::all_of(
      log_.tasks.begin(), log_.tasks.end(), [](const TaskRecord & t) { return t.delivered; });
    log_.outcome.success = state_ == MissionState::Completed && all_delivered;
    if (!log_.outcome.success) {
      log_.outcome.failure_mode = abort_mode_.empty() ? "task-not-delivered" : abort_mode_;
    }
    event(
      "outcome", log_.outcome.success ? "success" : "failure: " + log_.outcome.failure_mode);
    return std::move(log_);
  }

  const Task & task() const { return queue_[task_idx_]; }
  TaskRecord & task_record() { return log_.tasks[task_idx_]; }
  double now() const { return drone_.t; }
  double time_in_state() const { return drone_.t - state_entry_t_; }

  Vec3 jaw_position() const
  {
    return drone_.pose.position + rotate_z(p_.gripper.offset, drone_.pose.yaw);
  }

  bool settled_at(const Vec3 & target) const
  {
    return distance(drone_.pose.position, target) < cfg_.arrival_tolerance &&
           drone_.velocity.norm() < kSettledSpeed;
  }

  VelocityCommand hold(const Vec3 & point, double yaw) const
  {
    return pbvs_command(drone_, point, yaw, p_.gains, p_.limits);
  }

  double look_at_yaw(const Vec3 & target) const
  {
    const Vec3 d = target - drone_.pose.position;
    if (d.norm_xy() < kLookAtRange) {
      return drone_.pose.yaw;
    }
    return std::atan2(d.y, d.x);
  }

  // ---- perception ----------------------------------------------------------

  bool blackout_active()
  {
    if (!blackout_start_) {
      return false;
    }
    if (now() >= *blackout_start_ + cfg_.blackout.duration) {
      blackout_used_ = true;
      blackout_start_.reset();
      return false;
    }
    return now() >= *blackout_start_;
  }

  std::vector<SceneObject> visible_objects() const
  {
    std::vector<SceneObject> out;
    out.reserve(objects_.size());
    for (const auto & o : objects_) {
      if (!drone_.payload || *drone_.payload != o.id) {
        out.push_back(o);
      }
    }
    return out;
  }

  void update_perception()
  {
    perception_tick_ = false;
    if (now() + 1e-9 < next_perception_t_) {
      return;
    }
    next_perception_t_ += 1.0 / cfg_.perception_rate_hz;
    perception_tick_ = true;
    const bool dark = blackout_active();

    if (state_ == MissionState::Survey || state_ == MissionState::Grasp) {
      latest_.clear();
      if (dark) {
        return;
      }
      const auto dets = synth_detections(
        visible_objects(), drone_.pose, p_.camera, p_.mount, p_.noise, rng_);
      for (const auto & d : dets) {
        latest_.push_back({d, localize(d, drone_.pose, p_.camera, p_.mount)});
      }
    } else if (state_ == MissionState::Handover) {
      have_feature_ = false;
      if (dark) {
        return;
      }
      // Live chest feature from the pose landmarker, with pixel/depth noise.
      const Vec3 chest = chest_point(synth_skeleton(scene_.human));
      const Vec3 p_cam = world_to_camera(chest, drone_.pose, p_.mount);
      if (!(p_cam.z > 0.0)) {
        return;
      }
      const PixelDepth px = project(p_cam, p_.camera);
      if (!p_.camera.contains(px.u, px.v)) {
        return;
      }
      auto gauss = [&](double sigma) {
        if (sigma <= 0.0) {
          return 0.0;
        }
        std::normal_distribution<double> n(0.0, sigma);
        return n(rng_);
      };
      feature_.u = px.u + gauss(p_.noise.sigma_px);
      feature_.v = px.v + gauss(p_.noise.sigma_px);
      feature_.depth = std::max(px.depth + gauss(p_.noise.sigma_depth), 0.05);
      have_feature_ = true;
    }
  }

  // ---- safety and recovery -------------------------------------------------

  SafetyContext safety_context() const
  {
    SafetyContext ctx;
    ctx.state = state_;
    ctx.time_in_state = time_in_state();
    ctx.timeout = cfg_.timeout(state_);
    ctx.ibvs_active = (state_ == MissionState::Grasp || state_ == MissionState::Handover) &&
                      phase_ == 0 && ibvs_engaged_;
    ctx.consecutive_lost = lost_count_;
    ctx.lost_threshold = cfg_.lost_ticks;
    ctx.human_distance = distance_xy(drone_.pose.position, scene_.human.center);
    ctx.proximity_floor = cfg_.proximity_floor;
    return ctx;
  }

  static MissionState replan_state_for(MissionState s)
  {
    switch (s) {
      case MissionState::NavigateToObject:
        return MissionState::PlanToObject;
      case MissionState::NavigateToHuman:
        return MissionState::PlanToHuman;
      case MissionState::ReturnHome:
        return MissionState::PlanToHome;
      default:
        return s;
    }
  }

  void on_safety_event(const SafetyEvent & ev)
  {
    event("safety", fmt::format("{}: {}", to_string(ev.kind), ev.detail));
    switch (ev.kind) {
      case SafetyEventKind::HumanProximity: {
        Vec3 away = drone_.pose.position - scene_.human.center;
        away.z = 0.0;
        const double n = away.norm();
        away = n > 1e-9 ? away / n : Vec3{-1.0, 0.0, 0.0};
        Vec3 target = scene_.human.center + away * (log_.human_planning_radius + 0.1);
        target.z = drone_.pose.position.z;
        fail(kFailHumanProximity, ev.detail, replan_state_for(state_), target);
        return;
      }
      case SafetyEventKind::TargetLost:
        if (state_ == MissionState::Grasp) {
          fail(kFailTargetLost, ev.detail, MissionState::Survey, entry_point_);
        } else {
          fail(kFailTargetLost, ev.detail, MissionState::Handover, entry_point_);
        }
        return;
      case SafetyEventKind::StateTimeout: {
        if (state_ == MissionState::Recovering) {
          begin_abort(kFailStateTimeout, ev.detail);
          return;
        }
        std::optional<Vec3> retreat;
        if (state_ == MissionState::Grasp || state_ == MissionState::Handover) {
          retreat = entry_point_;
        }
        fail(kFailStateTimeout, ev.detail, replan_state_for(state_), retreat);
        return;
      }
    }
  }

  /// Counts a recovery against the current state, or aborts once the
  /// budget is spent.
  void fail(
    std::string_view mode, const std::string & detail, MissionState resume,
    std::optional<Vec3> retreat = std::nullopt)
  {
    if (aborting_) {
      // Already heading home; a second failure ends the mission in place.
      transition(MissionState::Aborted, fmt::format("{} while aborting: {}", mode, detail));
      return;
    }
    const int count = ++recoveries_[idx(state_)];
    if (count > cfg_.max_recoveries) {
      begin_abort(mode, detail, retreat);
      return;
    }
    event("recovery", fmt::format("{} #{} in {}: {}", mode, count, to_string(state_), detail));
    recovery_return_ = resume;
    retreat_target_ = retreat;
    transition(MissionState::Recovering, std::string(mode));
  }

  void begin_abort(
    std::string_view mode, const std::string & detail, std::optional<Vec3> retreat = std::nullopt)
  {
    aborting_ = true;
    abort_mode_ = std::string(mode);
    event("abort", fmt::format("{}: {}", mode, detail));
    recovery_return_ = MissionState::PlanToHome;
    retreat_target_ = retreat;
    if (state_ == MissionState::Recovering) {
      // Continue with the current hover and then head home.
      return;
    }
    transition(MissionState::Recovering, "abort: " + abort_mode_);
  }

  // ---- state entry ---------------------------------------------------------

  void on_enter(MissionState s)
  {
    if (cfg_.blackout.state && *cfg_.blackout.state == s && !blackout_used_ && !blackout_start_) {
      blackout_start_ = now() + cfg_.blackout.delay;
    }
    phase_ = 0;
    phase_start_ = now();
    switch (s) {
      case MissionState::Takeoff:
        recoveries_.fill(0);
        break;
      case MissionState::Survey:
        survey_poses_ = cfg_.survey_poses.empty()
                          ? default_survey_poses(scene_, cfg_.cruise_altitude)
                          : cfg_.survey_poses;
        survey_idx_ = 0;
        survey_dwelling_ = false;
        survey_detections_.clear();
        break;
      case MissionState::NavigateToObject:
      case MissionState::NavigateToHuman:
      case MissionState::ReturnHome: {
        const auto & wps = log_.legs[static_cast<std::size_t>(leg_idx_)].reference.waypoints;
        const Point2 here{drone_.pose.position.x, drone_.pose.position.y};
        wp_idx_ = (wps.size() > 1 && distance(here, wps.front()) < cfg_.waypoint_tolerance) ? 1 : 0;
        break;
      }
      case MissionState::Grasp:
      case MissionState::Handover:
        lost_count_ = 0;
        have_feature_ = false;
        ibvs_engaged_ = false;
        selector_.reset();
        break;
      case MissionState::Recovering:
        hover_point_ = drone_.pose.position;
        hover_yaw_ = drone_.pose.yaw;
        if (drone_.gripper == GripperState::Closed && !drone_.payload) {
          drone_ = actuate_gripper(drone_, GripperAction::Open, std::nullopt);
          event("gripper", "open (reset after miss)");
        }
        break;
      default:
        break;
    }
  }

  // ---- state handlers ------------------------------------------------------

  VelocityCommand run_state()
  {
    switch (state_) {
      case MissionState::Takeoff:
        return run_takeoff();
      case MissionState::Survey:
        return run_survey();
      case MissionState::Localize:
        return run_localize();
      case MissionState::PlanToObject:
        return run_plan(LegKind::HomeToObject);
      case MissionState::PlanToHuman:
        return run_plan(LegKind::ObjectToHuman);
      case MissionState::PlanToHome:
        return run_plan(LegKind::HumanToHome);
      case MissionState::NavigateToObject:
      case MissionState::NavigateToHuman:
      case MissionState::ReturnHome:
        return run_navigate();
      case MissionState::Grasp:
        return run_grasp();
      case MissionState::Handover:
        return run_handover();
      case MissionState::Land:
        return run_land();
      case MissionState::Recovering:
        return run_recovering();
      default:
        return {};
    }
  }

  VelocityCommand run_takeoff()
  {
    const Vec3 target{
      scene_.drone_home.position.x, scene_.drone_home.position.y, cfg_.cruise_altitude};
    if (settled_at(target)) {
      transition(MissionState::Survey, "at cruise altitude");
    }
    return hold(target, scene_.drone_home.yaw);
  }

  VelocityCommand run_survey()
  {
    const Pose & pose = survey_poses_[survey_idx_];
    const VelocityCommand cmd = hold(pose.position, pose.yaw);
    if (!survey_dwelling_) {
      if (
        settled_at(pose.position) &&
        std::abs(normalize_angle(pose.yaw - drone_.pose.yaw)) < kSettledYaw) {
        survey_dwelling_ = true;
        phase_start_ = now();
      }
      return cmd;
    }
    if (perception_tick_) {
      survey_detections_.insert(survey_detections_.end(), latest_.begin(), latest_.end());
    }
    if (now() - phase_start_ >= cfg_.survey_dwell) {
      event(
        "detections", fmt::format(
                        "survey pose {}: {} detections accumulated", survey_idx_,
                        survey_detections_.size()));
      survey_dwelling_ = false;
      if (++survey_idx_ == survey_poses_.size()) {
        transition(MissionState::Localize, "survey complete");
      }
    }
    return cmd;
  }

  VelocityCommand run_localize()
  {
    const VelocityCommand cmd = hold(drone_.pose.position, drone_.pose.yaw);
    GroundedTarget target;
    try {
      target = ground_task(task(), survey_detections_, drone_.pose.position);
    } catch (const ObjectNotFoundError & e) {
      fail(kFailObjectNotFound, e.what(), MissionState::Survey);
      return cmd;
    }
    target_estimate_ = target.world;
    task_record().grounded = target.world;
    event(
      "grounding", fmt::format(
                     "{} at ({:.3f}, {:.3f}, {:.3f}) conf {:.3f}", describe(task().descriptor),
                     target.world.x, target.world.y, target.world.z, target.detection.confidence));

    skeleton_ = synth_skeleton(scene_.human);
    HumanOrientation orientation;
    try {
      orientation = estimate_orientation(skeleton_);
    } catch (const DegenerateSkeletonError & e) {
      fail(kFailTargetLost, e.what(), MissionState::Survey);
      return cmd;
    }
    const HandoverSide side = estimate_hand_side(skeleton_, orientation);
    human_center_est_ = estimate_human_center(skeleton_);
    handover_ = handover_pose(human_center_est_, orientation, p_.handover, side);
    task_record().handover = handover_;
    event(
      "handover_pose", fmt::format(
                         "({:.3f}, {:.3f}, {:.3f}) yaw {:.3f} side {} mode {}",
                         handover_.pose.position.x, handover_.pose.position.y,
                         handover_.pose.position.z, handover_.pose.yaw, to_string(side),
                         to_string(p_.handover.mode)));
    transition(MissionState::PlanToObject, "target grounded");
    return cmd;
  }

  VelocityCommand run_plan(LegKind kind)
  {
    const VelocityCommand cmd = hold(drone_.pose.position, drone_.pose.yaw);
    Vec3 goal;
    MissionState next = MissionState::NavigateToObject;
    switch (kind) {
      case LegKind::HomeToObject:
        goal = target_estimate_;
        next = MissionState::NavigateToObject;
        break;
      case LegKind::ObjectToHuman:
        goal = handover_.pose.position;
        next = MissionState::NavigateToHuman;
        break;
      case LegKind::HumanToHome:
        goal = scene_.drone_home.position;
        next = MissionState::ReturnHome;
        break;
    }

    LegRecord leg;
    leg.task = static_cast<int>(task_idx_);
    leg.kind = kind;
    leg.altitude = cfg_.cruise_altitude;
    try {
      const OccupancyGrid grid =
        build_grid(planning_world(scene_, p_.planner, human_center_est_), p_.planner);
      leg.reference = plan_leg(
        grid, {drone_.pose.position.x, drone_.pose.position.y}, {goal.x, goal.y}, &leg.raw);
    } catch (const Error & e) {
      fail(kFailNoPath, e.what(), state_);
      return cmd;
    }
    event(
      "plan", fmt::format(
                "{}: {} waypoints ({} raw), cost {:.3f} m", to_string(kind),
                leg.reference.waypoints.size(), leg.raw.waypoints.size(), leg.reference.cost));
    log_.legs.push_back(std::move(leg));
    leg_idx_ = static_cast<int>(log_.legs.size()) - 1;
    transition(next, "path planned");
    return cmd;
  }

  VelocityCommand run_navigate()
  {
    const LegRecord & leg = log_.legs[static_cast<std::size_t>(leg_idx_)];
    const auto & wps = leg.reference.waypoints;
    auto setpoint = [&] { return Vec3{wps[wp_idx_].x, wps[wp_idx_].y, leg.altitude}; };
    if (
      wp_idx_ + 1 < wps.size() &&
      distance_xy(drone_.pose.position, setpoint()) < cfg_.waypoint_tolerance) {
      ++wp_idx_;
    }

    Vec3 look = scene_.drone_home.position;
    MissionState next = MissionState::Land;
    if (state_ == MissionState::NavigateToObject) {
      look = target_estimate_;
      next = MissionState::Grasp;
    } else if (state_ == MissionState::NavigateToHuman) {
      look = human_center_est_;
      next = MissionState::Handover;
    }
    const Vec3 sp = setpoint();
    const VelocityCommand cmd = hold(sp, look_at_yaw(look));
    if (wp_idx_ + 1 == wps.size() && settled_at(sp)) {
      entry_point_ = drone_.pose.position;
      approach_yaw_ = std::atan2(
        target_estimate_.y - entry_point_.y, target_estimate_.x - entry_point_.x);
      transition(next, "leg complete");
    }
    return cmd;
  }

  VelocityCommand ibvs_with_yaw_hold(
    const Feature & f, const Vec3 & feature_world, const Pose & desired)
  {
    const PixelDepth want =
      project(world_to_camera(feature_world, desired, p_.mount), p_.camera);
    ImageFeatureError err{f.u, f.v, want.u, want.v, f.depth};
    const double standoff = f.depth - want.depth;
    VelocityCommand cmd = body_to_world(
      ibvs_command(err, p_.camera, standoff, p_.gains, p_.limits), drone_.pose.yaw);
    cmd.yaw_rate = p_.gains.k_yaw * normalize_angle(desired.yaw - drone_.pose.yaw);
    return cmd;
  }

  std::optional<std::string> object_in_reach() const
  {
    const Vec3 jaw = jaw_position();
    std::optional<std::string> best;
    double best_d = p_.gripper.grasp_radius;
    for (const auto & o : objects_) {
      const double d = distance(jaw, object_centroid(o));
      if (d <= best_d) {
        best_d = d;
        best = o.id;
      }
    }
    return best;
  }

  const SceneObject * find_world_object(const std::string & id) const
  {
    for (const auto & o : objects_) {
      if (o.id == id) {
        return &o;
      }
    }
    return nullptr;
  }

  VelocityCommand run_grasp()
  {
    if (phase_ == 0) {
      if (perception_tick_) {
        const LocalizedDetection * match = nullptr;
        double best = kTrackGate;
        for (const auto & d : latest_) {
          if (!label_matches(task().descriptor, d.detection.label)) {
            continue;
          }
          const double dist = distance(d.world, target_estimate_);
          if (dist < best) {
            best = dist;
            match = &d;
          }
        }
        if (match != nullptr) {
          target_estimate_ = match->world;
          feature_ = {
            match->detection.bbox.center_u(), match->detection.bbox.center_v(),
            match->detection.centroid_depth};
          have_feature_ = true;
          lost_count_ = 0;
        } else {
          ++lost_count_;
        }
      }

      const Pose desired =
        Pose::make(target_estimate_ - rotate_z(p_.gripper.offset, approach_yaw_), approach_yaw_);
      const double dist = distance(jaw_position(), target_estimate_);
      const bool visible = have_feature_ && lost_count_ < cfg_.lost_ticks;
      const ServoMode mode = selector_.update(dist, visible);
      ibvs_engaged_ = ibvs_engaged_ || mode == ServoMode::IBVS;

      VelocityCommand cmd = mode == ServoMode::PBVS
                              ? hold(desired.position, desired.yaw)
                              : ibvs_with_yaw_hold(feature_, target_estimate_, desired);

      const Vec3 target_rel = world_to_body(target_estimate_, drone_.pose) - p_.gripper.offset;
      const bool seen_now = have_feature_ && lost_count_ == 0;
      if (
        seen_now &&
        gripper_policy(target_rel, GraspPhase::Grasping, p_.gripper) == GripperAction::Close) {
        const auto reach = object_in_reach();
        drone_ = actuate_gripper(drone_, GripperAction::Close, reach);
        const SceneObject * obj = reach ? find_world_object(*reach) : nullptr;
        const bool right_object =
          obj != nullptr && label_matches(task().descriptor, {obj->noun, obj->attributes});
        log_.gripper_events.push_back(
          {now(), static_cast<int>(task_idx_), GripperAction::Close,
           right_object ? "object" : "elsewhere", reach});
        event("gripper", fmt::format("close, payload {}", reach ? *reach : "none"));
        if (!drone_.payload) {
          fail(kFailGraspMiss, "gripper closed on nothing", MissionState::Grasp, entry_point_);
          return cmd;
        }
        task_record().picked_object = drone_.payload;
        phase_ = 1;
        phase_start_ = now();
        hold_point_ = drone_.pose.position;
      }
      return cmd;
    }

    if (phase_ == 1) {
      if (now() - phase_start_ >= cfg_.grasp_hold) {
        phase_ = 2;
      }
      return hold(hold_point_, approach_yaw_);
    }

    if (settled_at(entry_point_)) {
      transition(MissionState::PlanToHuman, "object grasped");
    }
    return hold(entry_point_, approach_yaw_);
  }

  VelocityCommand run_handover()
  {
    const Pose & desired = handover_.pose;
    if (phase_ <= 1) {
      if (perception_tick_) {
        lost_count_ = have_feature_ ? 0 : lost_count_ + 1;
      }
      const double dist = distance(drone_.pose.position, desired.position);
      const bool visible = have_feature_ && lost_count_ < cfg_.lost_ticks;
      const ServoMode mode = selector_.update(dist, visible || phase_ == 1);
      ibvs_engaged_ = ibvs_engaged_ || mode == ServoMode::IBVS;
      const Vec3 chest = chest_point(skeleton_);

      if (mode == ServoMode::PBVS) {
        return hold(desired.position, desired.yaw);
      }
      const VelocityCommand cmd = ibvs_with_yaw_hold(feature_, chest, desired);
      if (phase_ == 0) {
        const PixelDepth want = project(world_to_camera(chest, desired, p_.mount), p_.camera);
        const double px_err = std::hypot(feature_.u - want.u, feature_.v - want.v);
        if (px_err < kFeatureTolPx && std::abs(feature_.depth - want.depth) < kStandoffTol) {
          phase_ = 1;
          phase_start_ = now();
          event("handover", fmt::format("aligned, pixel error {:.2f}", px_err));
        }
      } else if (now() - phase_start_ >= cfg_.handover_dwell) {
        release();
        phase_ = 2;
      }
      return cmd;
    }

    if (settled_at(entry_point_)) {
      transition(MissionState::PlanToHome, "handover complete");
    }
    return hold(entry_point_, desired.yaw);
  }

  void release()
  {
    const auto action = gripper_policy({}, GraspPhase::Handover, p_.gripper);
    const std::optional<std::string> carried = drone_.payload;
    drone_ = actuate_gripper(drone_, action, std::nullopt);
    const bool at_human =
      distance(drone_.pose.position, handover_.pose.position) < kReleaseTol;
    log_.gripper_events.push_back(
      {now(), static_cast<int>(task_idx_), GripperAction::Open, at_human ? "human" : "elsewhere",
       carried});
    event("gripper", fmt::format("open, handed over {}", carried ? *carried : "none"));
    if (carried) {
      const SceneObject * obj = find_world_object(*carried);
      task_record().delivered =
        at_human && obj != nullptr &&
        label_matches(task().descriptor, {obj->noun, obj->attributes});
      std::erase_if(objects_, [&](const SceneObject & o) { return o.id == *carried; });
    }
  }

  VelocityCommand run_land()
  {
    const Pose & home = scene_.drone_home;
    if (settled_at(home.position)) {
      if (aborting_) {
        transition(MissionState::Aborted, "landed after abort: " + abort_mode_);
      } else if (task_idx_ + 1 < queue_.size()) {
        ++task_idx_;
        transition(MissionState::Takeoff, "next task");
      } else {
        transition(MissionState::Completed, "all tasks done");
      }
    }
    return hold(home.position, home.yaw);
  }

  VelocityCommand run_recovering()
  {
    if (retreat_target_) {
      if (settled_at(*retreat_target_)) {
        hover_point_ = *retreat_target_;
        retreat_target_.reset();
        phase_start_ = now();
      } else {
        return hold(*retreat_target_, hover_yaw_);
      }
    }
    if (now() - phase_start_ >= cfg_.recovery_hover) {
      transition(recovery_return_, aborting_ ? "returning home" : "resuming");
    }
    return hold(hover_point_, hover_yaw_);
  }

  void carry_payload()
  {
    if (!drone_.payload) {
      return;
    }
    for (auto & o : objects_) {
      if (o.id == *drone_.payload) {
        o.position = jaw_position() - Vec3{0.0, 0.0, o.radius};
      }
    }
  }

  const Scene & scene_;
  std::vector<SceneObject> objects_;
  const TaskQueue & queue_;
  const MissionParams & p_;
  const MissionConfig & cfg_;
  Rng rng_;

  DroneState drone_{};
  MissionLog log_{};
  MissionState state_{MissionState::Idle};
  double state_entry_t_{0.0};
  std::size_t task_idx_{0};
  std::array<int, kMissionStateCount> recoveries_{};
  bool aborting_{false};
  std::string abort_mode_;

  MissionState recovery_return_{MissionState::Survey};
  std::optional<Vec3> retreat_target_;
  Vec3 hover_point_{};
  double hover_yaw_{0.0};

  double next_perception_t_{0.0};
  bool perception_tick_{false};
  std::vector<LocalizedDetection> latest_;
  std::optional<double> blackout_start_;
  bool blackout_used_{false};

  std::vector<Pose> survey_poses_;
  std::size_t survey_idx_{0};
  bool survey_dwelling_{false};
  std::vector<LocalizedDetection> survey_detections_;

  Vec3 target_estimate_{};
  Vec3 human_center_est_{};
  SkeletonLandmarks skeleton_{};
  HandoverPose handover_{};

  int leg_idx_{-1};
  std::size_t wp_idx_{0};

  int phase_{0};
  double phase_start_{0.0};
  Vec3 entry_point_{};
  Vec3 hold_point_{};
  double approach_yaw_{0.0};
  int lost_count_{0};
  bool have_feature_{false};
  /// Set once the approach has switched to IBVS; a later loss of the
  /// feature counts as target-lost even after the PBVS fallback.
  bool ibvs_engaged_{false};
  Feature feature_{};
  ServoModeSelector selector_;
};

}  // namespace

std::string_view to_string(MissionState s)
{
  switch (s) {
    case MissionState::Idle:
      return "Idle";
    case MissionState::Takeoff:
      return "Takeoff";
    case MissionState::Survey:
      return "Survey";
    case MissionState::Localize:
      return "Localize";
    case MissionState::PlanToObject:
      return "PlanToObject";
    case MissionState::NavigateToObject:
      return "NavigateToObject";
    case MissionState::Grasp:
      return "Grasp";
    case MissionState::PlanToHuman:
      return "PlanToHuman";
    case MissionState::NavigateToHuman:
      return "NavigateToHuman";
    case MissionState::Handover:
      return "Handover";
    case MissionState::PlanToHome:
      return "PlanToHome";
    case MissionState::ReturnHome:
      return "ReturnHome";
    case MissionState::Land:
      return "Land";
    case MissionState::Recovering:
      return "Recovering";
    case MissionState::Aborted:
      return "Aborted";
    case MissionState::Completed:
      return "Completed";
  }
  return "Unknown";
}

std::string_view to_string(LegKind k)
{
  switch (k) {
    case LegKind::HomeToObject:
      return "home-object";
    case LegKind::ObjectToHuman:
      return "object-human";
    case LegKind::HumanToHome:
      return "human-home";
  }
  return "unknown";
}

std::string_view to_string(SafetyEventKind k)
{
  switch (k) {
    case SafetyEventKind::TargetLost:
      return "target-lost";
    case SafetyEventKind::StateTimeout:
      return "state-timeout";
    case SafetyEventKind::HumanProximity:
      return "human-proximity";
  }
  return "unknown";
}

bool is_terminal(MissionState s) { return s == MissionState::Aborted || s == MissionState::Completed; }

bool is_navigation(MissionState s)
{
  return s == MissionState::NavigateToObject || s == MissionState::NavigateToHuman ||
         s == MissionState::ReturnHome;
}

bool is_valid_transition(MissionState from, MissionState to)
{
  using S = MissionState;
  if (is_terminal(from) || from == to) {
    return false;
  }
  if (to == S::Aborted) {
    return true;
  }
  if (to == S::Recovering) {
    return from != S::Idle;
  }
  if (from == S::Recovering) {
    switch (to) {
      case S::Takeoff:
      case S::Survey:
      case S::Localize:
      case S::PlanToObject:
      case S::Grasp:
      case S::PlanToHuman:
      case S::Handover:
      case S::PlanToHome:
      case S::Land:
        return true;
      default:
        return false;
    }
  }
  switch (from) {
    case S::Idle:
      return to == S::Takeoff;
    case S::Takeoff:
      return to == S::Survey;
    case S::Survey:
      return to == S::Localize;
    case S::Localize:
      return to == S::PlanToObject;
    case S::PlanToObject:
      return to == S::NavigateToObject;
    case S::NavigateToObject:
      return to == S::Grasp;
    case S::Grasp:
      return to == S::PlanToHuman;
    case S::PlanToHuman:
      return to == S::NavigateToHuman;
    case S::NavigateToHuman:
      return to == S::Handover;
    case S::Handover:
      return to == S::PlanToHome;
    case S::PlanToHome:
      return to == S::ReturnHome;
    case S::ReturnHome:
      return to == S::Land;
    case S::Land:
      return to == S::Takeoff || to == S::Completed;
    default:
      return false;
  }
}

std::array<double, kMissionStateCount> MissionConfig::default_timeouts()
{
  constexpr double kNever = std::numeric_limits<double>::infinity();
  std::array<double, kMissionStateCount> t{};
  t.fill(kNever);
  t[idx(MissionState::Takeoff)] = 20.0;
  t[idx(MissionState::Survey)] = 90.0;
  t[idx(MissionState::Localize)] = 5.0;
  t[idx(MissionState::PlanToObject)] = 5.0;
  t[idx(MissionState::NavigateToObject)] = 60.0;
  t[idx(MissionState::Grasp)] = 45.0;
  t[idx(MissionState::PlanToHuman)] = 5.0;
  t[idx(MissionState::NavigateToHuman)] = 60.0;
  t[idx(MissionState::Handover)] = 45.0;
  t[idx(MissionState::PlanToHome)] = 5.0;
  t[idx(MissionState::ReturnHome)] = 60.0;
  t[idx(MissionState::Land)] = 30.0;
  t[idx(MissionState::Recovering)] = 30.0;
  return t;
}

std::vector<Pose> default_survey_poses(const Scene & scene, double cruise_altitude)
{
  const Vec3 table{scene.table.center.x, scene.table.center.y, cruise_altitude};
  const Vec3 home{scene.drone_home.position.x, scene.drone_home.position.y, cruise_altitude};
  auto facing_table = [&](const Vec3 & p) {
    return Pose::make(p, std::atan2(table.y - p.y, table.x - p.x));
  };

  std::vector<Pose> poses{facing_table(home)};
  Vec3 out = home - table;
  out.z = 0.0;
  const double n = out.norm();
  out = n > 1e-9 ? out / n : Vec3{-1.0, 0.0, 0.0};
  const Vec3 side{-out.y, out.x, 0.0};
  constexpr double kStandoff = 2.0;
  constexpr double kLateral = 1.2;
  poses.push_back(facing_table(table + out * kStandoff + side * kLateral));
  poses.push_back(facing_table(table + out * kStandoff - side * kLateral));
  return poses;
}

MissionLog run_mission(const Scene & scene, const TaskQueue & queue, const MissionParams & params)
{
  if (const auto violations = validate_params(params); !violations.empty()) {
    throw InvalidParameterError(violations.front());
  }
  return MissionRunner(scene, queue, params).run();
}

std::optional<SafetyEvent> check_safety(const SafetyContext & ctx)
{
  if (ctx.state == MissionState::Idle || is_terminal(ctx.state)) {
    return std::nullopt;
  }
  const bool proximity_exempt =
    ctx.state == MissionState::Handover || ctx.state == MissionState::Recovering;
  if (!proximity_exempt && ctx.human_distance < ctx.proximity_floor) {
    return SafetyEvent{
      SafetyEventKind::HumanProximity,
      fmt::format(
        "{:.3f} m from human (floor {:.2f} m)", ctx.human_distance, ctx.proximity_floor)};
  }
  if (ctx.ibvs_active && ctx.consecutive_lost >= ctx.lost_threshold) {
    return SafetyEvent{
      SafetyEventKind::TargetLost,
      fmt::format("no target for {} perception ticks", ctx.consecutive_lost)};
  }
  if (ctx.time_in_state > ctx.timeout) {
    return SafetyEvent{
      SafetyEventKind::StateTimeout,
      fmt::format(
        "{} exceeded {:.1f} s", to_string(ctx.state), ctx.timeout)};
  }
  return std::nullopt;
}

ErrorStats trajectory_errors(std::span<const Vec3> reference, std::span<const Vec3> achieved)
{
  if (reference.empty()) {
    throw EmptyLogError("reference path is empty");
  }
  const auto d = deviations_to(reference, achieved);
  return stats_of(d);
}

MetricsReport compute_metrics(const MissionLog & log)
{
  if (log.ticks.empty()) {
    throw EmptyLogError("mission log has no ticks");
  }
  MetricsReport report;
  report.duration = log.ticks.back().t;
  report.min_human_clearance = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t L = 0; L < log.legs.size(); ++L) {
    const LegRecord & leg = log.legs[L];
    std::vector<Vec3> achieved;
    // Starting point of the leg: the pose just before its first tick.
    std::optional<Vec3> previous;
    double clearance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < log.ticks.size(); ++k) {
      const TickRecord & tick = log.ticks[k];
      if (tick.leg != static_cast<int>(L)) {
        continue;
      }
      if (!previous && k > 0) {
        previous = log.ticks[k - 1].pose.position;
      }
      const Vec3 p = tick.pose.position;
      if (previous) {
        clearance =
          std::min(clearance, point_segment_distance_xy(log.human_center, *previous, p));
      } else {
        clearance = std::min(clearance, distance_xy(log.human_center, p));
      }
      previous = p;
      achieved.push_back(p);
    }
    if (achieved.empty() || leg.reference.waypoints.empty()) {
      continue;
    }
    const auto reference = lift(leg.reference, leg.altitude);
    const auto dev = deviations_to(reference, achieved);
    report.deviations.insert(report.deviations.end(), dev.begin(), dev.end());

    LegMetrics lm;
    lm.task = leg.task;
    lm.kind = leg.kind;
    lm.error = stats_of(dev);
    lm.min_clearance = clearance;
    report.legs.push_back(lm);
    if (std::isnan(report.min_human_clearance) || clearance < report.min_human_clearance) {
      report.min_human_clearance = clearance;
    }
  }
  report.aggregate = stats_of(report.deviations);

  report.gripper_sequence_ok = !log.tasks.empty();
  for (std::size_t t = 0; t < log.tasks.size(); ++t) {
    std::vector<const GripperEvent *> evs;
    for (const auto & e : log.gripper_events) {
      if (e.task == static_cast<int>(t)) {
        evs.push_back(&e);
      }
    }
    const bool ok = evs.size() == 2 && evs[0]->action == GripperAction::Close &&
                    evs[0]->where == "object" && evs[1]->action == GripperAction::Open &&
                    evs[1]->where == "human";
    report.gripper_sequence_ok = report.gripper_sequence_ok && ok;
  }
  return report;
}

ErrorStats pool_errors(std::span<const MetricsReport> reports)
{
  std::vector<double> all;
  for (const auto & r : reports) {
    all.insert(all.end(), r.deviations.begin(), r.deviations.end());
  }
  return stats_of(all);
}

}  // namespace aerofetch
