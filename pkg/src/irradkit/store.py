"""Persistence and workflow for the experiment/sample data manager.

One JSON document per record under the data root, an append-only audit log,
and a persisted id counter that survives restarts.  Writes are serialized by
a process-wide lock; optimistic version checks guard concurrent editors.
Exports compose ontology individuals so that every record written through
this API maps to a dataset with zero non-draft violations.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from . import builtin
from .errors import (
    Forbidden,
    NotFound,
    TemporalOrder,
    UnknownExperiment,
    ValidationError,
    VersionConflict,
)
from .ontology import (
    Dataset,
    HAS_VALUE,
    Iri,
    Literal,
    QuantityValue,
    RadiationFieldSpec,
    load_builtin_ontology,
    parse_instant,
)
from .records import (
    AdminBlock,
    DutIrradiationRecord,
    ExperimentRecord,
    SampleRecord,
    fluence_quantity,
    normalize_category,
    quantity_from_dict,
    quantity_to_dict,
)
from .turtle_io import graph_from_dataset, serialize_turtle
from .validation import Report, validate_dataset

_CUMULATED_CLASS_FOR_KIND = {
    builtin.FLUENCE: builtin.FLUENCE,
    builtin.OM_ABSORBED_DOSE: builtin.ABSORBED_DOSE,
}

_ROLE_FIELDS = (
    ("responsible", builtin.RESPONSIBLE_PERSON),
    ("operator", builtin.OPERATOR),
    ("coordinator", builtin.FACILITY_COORDINATOR),
    ("manager", builtin.FACILITY_MANAGER),
)


@dataclass
class Page:
    items: list[SampleRecord]
    total: int
    page: int
    page_size: int

    def to_dict(self) -> dict:
        return {
            "items": [s.to_dict() for s in self.items],
            "total": self.total,
            "page": self.page,
            "pageSize": self.page_size,
        }


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _iso(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class DataManager:
    """File-backed store with the sample/experiment workflow operations."""

    def __init__(self, root: str | Path, now_fn: Callable[[], datetime] | None = None):
        self.root = Path(root)
        self.ontology = load_builtin_ontology()
        self._now_fn = now_fn or _utcnow
        self._lock = threading.RLock()
        for sub in ("experiments", "samples", "imports"):
            (self.root / sub).mkdir(parents=True, exist_ok=True)
        if not self._fields_path.exists():
            self._write_json(
                self._fields_path,
                {
                    "iedm:Protons_24GeV": {
                        "particles": ["iedm:Proton"],
                        "momentum": {
                            "value": 24.0,
                            "kind": "iedm:RelativisticMomentum",
                            "unit": "om:gigaelectronvoltPerSpeedOfLight",
                            "relativeError": None,
                        },
                    }
                },
            )

    # -- low-level files -----------------------------------------------------

    @property
    def _counters_path(self) -> Path:
        return self.root / "counters.json"

    @property
    def _users_path(self) -> Path:
        return self.root / "users.json"

    @property
    def _fields_path(self) -> Path:
        return self.root / "fields.json"

    def _read_json(self, path: Path, default):
        if not path.exists():
            return default
        return json.loads(path.read_text())

    def _write_json(self, path: Path, payload) -> None:
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        os.replace(tmp, path)

    def _audit(self, user: str, record_id: str, version: int, action: str) -> None:
        line = f"{self.now()}\t{user}\t{record_id}\t{version}\t{action}\n"
        with open(self.root / "audit.log", "a", encoding="utf-8") as handle:
            handle.write(line)

    def now(self) -> str:
        return _iso(self._now_fn())

    def _next_id(self, kind: str, prefix: str) -> str:
        with self._lock:
            counters = self._read_json(self._counters_path, {})
            counters[kind] = counters.get(kind, 0) + 1
            self._write_json(self._counters_path, counters)
            return f"{prefix}-{counters[kind]:06d}"

    def _claim_id(self, kind: str, numeric: int) -> None:
        """Advance the counter past an externally chosen id (seed data)."""
        with self._lock:
            counters = self._read_json(self._counters_path, {})
            counters[kind] = max(counters.get(kind, 0), numeric)
            self._write_json(self._counters_path, counters)

    # -- users and roles -------------------------------------------------------

    def add_facility_role(self, email: str, role: str) -> None:
        if role not in ("manager", "coordinator"):
            raise ValidationError(f"unknown facility role: {role!r}")
        with self._lock:
            users = self._read_json(self._users_path, {"managers": [], "coordinators": []})
            bucket = users["managers" if role == "manager" else "coordinators"]
            if email not in bucket:
                bucket.append(email)
            self._write_json(self._users_path, users)

    def is_facility_admin(self, email: str) -> bool:
        users = self._read_json(self._users_path, {"managers": [], "coordinators": []})
        return email in users.get("managers", []) or email in users.get("coordinators", [])

    # -- radiation fields ------------------------------------------------------

    def register_field(
        self,
        field_iri: str,
        particles: Iterable[str],
        momentum: QuantityValue | None = None,
    ) -> None:
        spec = RadiationFieldSpec(
            tuple(Iri.parse(p) for p in particles), beam_momentum=momentum
        )
        with self._lock:
            fields = self._read_json(self._fields_path, {})
            fields[str(Iri.parse(field_iri))] = {
                "particles": [str(p) for p in spec.particles],
                "momentum": quantity_to_dict(spec.beam_momentum),
            }
            self._write_json(self._fields_path, fields)

    def field_spec(self, field_iri: str) -> RadiationFieldSpec:
        fields = self._read_json(self._fields_path, {})
        entry = fields.get(str(Iri.parse(field_iri)))
        if entry is None:
            raise NotFound(f"unknown radiation field: {field_iri}")
        return RadiationFieldSpec(
            tuple(Iri.parse(p) for p in entry["particles"]),
            beam_momentum=quantity_from_dict(entry.get("momentum")),
        )

    def list_fields(self) -> dict:
        return self._read_json(self._fields_path, {})

    # -- experiments -----------------------------------------------------------

    def _experiment_path(self, exp_id: str) -> Path:
        return self.root / "experiments" / f"{exp_id}.json"

    def get_experiment(self, exp_id: str) -> ExperimentRecord:
        path = self._experiment_path(exp_id)
        if not path.exists():
            raise NotFound(f"no such experiment: {exp_id}")
        return ExperimentRecord.from_dict(json.loads(path.read_text()))

    def _save_experiment(self, record: ExperimentRecord) -> None:
        self._write_json(self._experiment_path(record.id), record.to_dict())

    def list_experiments(self, user: str | None = None) -> list[ExperimentRecord]:
        records = []
        for path in sorted((self.root / "experiments").glob("*.json")):
            record = ExperimentRecord.from_dict(json.loads(path.read_text()))
            if self._may_see(record, user):
                records.append(record)
        return records

    def create_experiment(
        self,
        title: str,
        facility: str,
        irradiation_category: str,
        technical_requirements: str,
        admin: AdminBlock | dict,
        user: str,
    ) -> ExperimentRecord:
        if isinstance(admin, dict):
            admin = AdminBlock.from_dict(admin)
        category = normalize_category(irradiation_category)
        if category == "PassiveCustomIrradiation" and not technical_requirements.strip():
            raise ValidationError(
                "a passive custom irradiation needs technical requirements"
            )
        if not title.strip():
            raise ValidationError("experiment title must not be empty")
        facility_iri = str(Iri.parse(facility))
        with self._lock:
            record = ExperimentRecord(
                id=self._next_id("experiment", "EXP"),
                title=title,
                facility=facility_iri,
                irradiation_category=category,
                technical_requirements=technical_requirements,
                admin=admin,
            )
            self._save_experiment(record)
            self._audit(user, record.id, record.version, "create-experiment")
        return record

    def set_visibility(self, exp_id: str, visible: bool, user: str) -> ExperimentRecord:
        with self._lock:
            record = self.get_experiment(exp_id)
            if user != record.admin.responsible and not self.is_facility_admin(user):
                raise Forbidden(
                    f"{user} may not change the visibility of {exp_id}"
                )
            if record.visible != visible:
                record.visible = visible
                record.version += 1
                self._save_experiment(record)
            self._audit(user, exp_id, record.version, f"visibility={visible}")
        return record

    def _may_see(self, experiment: ExperimentRecord, user: str | None) -> bool:
        if experiment.visible:
            return True
        if user is None:
            return False
        return user in experiment.admin.emails() or self.is_facility_admin(user)

    # -- DUT irradiation lifecycle ----------------------------------------------

    def register_dut_irradiation(
        self,
        exp_id: str,
        dut_id: str,
        field_id: str,
        start: str,
        user: str = "",
        particles: Iterable[str] | None = None,
    ) -> DutIrradiationRecord:
        with self._lock:
            experiment = self.get_experiment(exp_id)
            self.get_sample(dut_id)
            field_iri = str(Iri.parse(field_id))
            if particles:
                self.register_field(field_iri, particles)
            self.field_spec(field_iri)  # NotFound when unregistered
            parse_instant(start)
            record = DutIrradiationRecord(
                rid=f"IRR-{len(experiment.dut_irradiations) + 1:03d}",
                dut_id=dut_id,
                radiation_field=field_iri,
                start=start,
            )
            experiment.dut_irradiations.append(record)
            experiment.version += 1
            self._save_experiment(experiment)
            self._audit(user or "system", f"{exp_id}/{record.rid}", 1, "register-irradiation")
        return record

    def complete_dut_irradiation(
        self,
        exp_id: str,
        rid: str,
        end: str,
        cumulated: QuantityValue | dict | None = None,
        user: str = "",
    ) -> DutIrradiationRecord:
        if isinstance(cumulated, dict):
            cumulated = quantity_from_dict(cumulated)
        if cumulated is not None and cumulated.kind not in _CUMULATED_CLASS_FOR_KIND:
            raise ValidationError(
                f"cumulated quantities must be fluence or absorbed dose, got {cumulated.kind}"
            )
        with self._lock:
            experiment = self.get_experiment(exp_id)
            record = next(
                (r for r in experiment.dut_irradiations if r.rid == rid), None
            )
            if record is None:
                raise NotFound(f"no such irradiation in {exp_id}: {rid}")
            if parse_instant(end) < parse_instant(record.start):
                raise TemporalOrder(
                    f"end {end} precedes start {record.start}"
                )
            record.end = end
            record.cumulated = cumulated
            experiment.version += 1
            self._save_experiment(experiment)
            self._audit(user or "system", f"{exp_id}/{rid}", 2, "complete-irradiation")
        return record

    # -- samples -----------------------------------------------------------------

    def _sample_path(self, sample_id: str) -> Path:
        return self.root / "samples" / f"{sample_id}.json"

    def get_sample(self, sample_id: str) -> SampleRecord:
        path = self._sample_path(sample_id)
        if not path.exists():
            raise NotFound(f"no such sample: {sample_id}")
        record = SampleRecord.from_dict(json.loads(path.read_text()))
        try:
            record.visible = self.get_experiment(record.experiment_id).visible
        except NotFound:
            record.visible = False
        return record

    def _save_sample(self, record: SampleRecord) -> None:
        self._write_json(self._sample_path(record.id), record.to_dict())

    def create_sample(
        self,
        name: str,
        category_note: str,
        requested_fluence: QuantityValue | float,
        experiment_id: str,
        user: str,
        occupancy: tuple[float, float, float] | None = None,
        force_id: str | None = None,
        force_last_update: str | None = None,
    ) -> SampleRecord:
        """Create a sample; force_* parameters exist for seeding fixtures."""
        if isinstance(requested_fluence, (int, float)):
            requested_fluence = fluence_quantity(float(requested_fluence))
        if requested_fluence.value < 0:
            raise ValidationError("requested fluence must be non-negative")
        with self._lock:
            if not self._experiment_path(experiment_id).exists():
                raise UnknownExperiment(f"no such experiment: {experiment_id}")
            if force_id is not None:
                if self._sample_path(force_id).exists():
                    raise ValidationError(f"sample id already in use: {force_id}")
                self._claim_id("sample", int(force_id.split("-")[1]))
                sample_id = force_id
            else:
                sample_id = self._next_id("sample", "SET")
            record = SampleRecord(
                id=sample_id,
                name=name,
                category_note=category_note,
                requested_fluence=requested_fluence,
                occupancy=tuple(occupancy) if occupancy else (0.0, 0.0, 0.0),
                last_update=force_last_update or self.now(),
                last_updated_by=user,
                experiment_id=experiment_id,
            )
            self._save_sample(record)
            self._audit(user, record.id, record.version, "create-sample")
        return record

    def update_sample(
        self, sample_id: str, patch: dict, user: str, expected_version: int
    ) -> SampleRecord:
        allowed = {"name", "categoryNote", "requestedFluence", "occupancy", "experimentId"}
        unknown = set(patch) - allowed
        if unknown:
            raise ValidationError(f"unknown patch fields: {sorted(unknown)}")
        with self._lock:
            record = self.get_sample(sample_id)
            if record.version != expected_version:
                raise VersionConflict(
                    f"{sample_id}: expected version {expected_version}, "
                    f"stored version is {record.version}"
                )
            changes: dict = {}
            if "name" in patch:
                changes["name"] = str(patch["name"])
            if "categoryNote" in patch:
                changes["category_note"] = str(patch["categoryNote"])
            if "requestedFluence" in patch:
                value = patch["requestedFluence"]
                if isinstance(value, dict):
                    changes["requested_fluence"] = quantity_from_dict(value)
                else:
                    changes["requested_fluence"] = fluence_quantity(float(value))
            if "occupancy" in patch:
                changes["occupancy"] = tuple(float(v) for v in patch["occupancy"])
            if "experimentId" in patch:
                if not self._experiment_path(patch["experimentId"]).exists():
                    raise UnknownExperiment(f"no such experiment: {patch['experimentId']}")
                changes["experiment_id"] = patch["experimentId"]
            updated = record.with_patch(
                version=record.version + 1,
                last_update=max(self.now(), record.last_update),
                last_updated_by=user,
                **changes,
            )
            self._save_sample(updated)
            self._audit(user, updated.id, updated.version, "update-sample")
        return updated

    def list_samples(
        self,
        query: str = "",
        experiment_id: str | None = None,
        page: int = 1,
        page_size: int = 50,
        user: str | None = None,
    ) -> Page:
        if not 1 <= page_size <= 500:
            raise ValidationError("pageSize must lie in [1, 500]")
        if page < 1:
            raise ValidationError("page must be at least 1")
        visible_experiments: dict[str, bool] = {}
        records = []
        for path in sorted((self.root / "samples").glob("*.json")):
            record = SampleRecord.from_dict(json.loads(path.read_text()))
            exp_id = record.experiment_id
            if exp_id not in visible_experiments:
                try:
                    experiment = self.get_experiment(exp_id)
                    visible_experiments[exp_id] = self._may_see(experiment, user)
                    record.visible = experiment.visible
                except NotFound:
                    visible_experiments[exp_id] = False
            else:
                try:
                    record.visible = self.get_experiment(exp_id).visible
                except NotFound:
                    record.visible = False
            if not visible_experiments[exp_id]:
                continue
            if experiment_id and exp_id != experiment_id:
                continue
            needle = query.strip().lower()
            if needle and needle not in record.id.lower() and needle not in record.name.lower():
                continue
            records.append(record)
        records.sort(key=lambda r: (r.last_update, r.id), reverse=True)
        start = (page - 1) * page_size
        return Page(records[start : start + page_size], len(records), page, page_size)

    # -- ontology export -----------------------------------------------------------

    def experiment_dataset(self, exp_id: str) -> Dataset:
        """Compose the ontology individuals describing one experiment."""
        experiment = self.get_experiment(exp_id)
        onto = self.ontology
        ds = Dataset(onto)

        def local(suffix: str = "") -> Iri:
            return Iri("iedm", experiment.id + suffix)

        exp_ind = ds.mint_individual(builtin.IRRADIATION_EXPERIMENT, local())

        facility_iri = Iri.parse(experiment.facility)
        if facility_iri not in ds:
            ds.mint_individual(builtin.IRRADIATION_FACILITY, facility_iri)
        ds.assert_statement(exp_ind, builtin.PERFORMED_AT, facility_iri)

        category_class = Iri("iedm", experiment.irradiation_category)
        category = ds.mint_individual(category_class, local("_category"))
        ds.assert_statement(exp_ind, builtin.HAS_IRRADIATION_CATEGORY, category.iri)
        if (
            experiment.irradiation_category == "PassiveCustomIrradiation"
            and experiment.technical_requirements.strip()
        ):
            requirements = ds.mint_individual(
                builtin.TECHNICAL_REQUIREMENTS, local("_requirements")
            )
            ds.assert_statement(
                requirements,
                HAS_VALUE,
                Literal(experiment.technical_requirements, "string"),
            )
            ds.assert_statement(
                category, builtin.HAS_TECHNICAL_REQUIREMENTS, requirements.iri
            )

        admin = ds.mint_individual(builtin.ADMIN_INFO, local("_admin"))
        ds.assert_statement(exp_ind, builtin.EXPO_HAS_PART, admin.iri)
        for field_name, role_class in _ROLE_FIELDS:
            email = getattr(experiment.admin, field_name)
            if not email:
                continue
            person = ds.mint_individual(role_class, local(f"_{field_name}"))
            ds.assert_statement(person, HAS_VALUE, Literal(email, "string"))
            ds.assert_statement(admin, builtin.HAS_ROLE, person.iri)

        for irr in experiment.dut_irradiations:
            irr_ind = ds.mint_individual(
                builtin.DUT_IRRADIATION, local(f"_{irr.rid}")
            )
            ds.assert_statement(exp_ind, builtin.HAS_PART, irr_ind.iri)

            dut_iri = Iri("iedm", irr.dut_id)
            if dut_iri not in ds:
                ds.mint_individual(builtin.DUT, dut_iri)
            ds.assert_statement(irr_ind, builtin.HAS_DUT, dut_iri)

            field_iri = Iri.parse(irr.radiation_field)
            try:
                spec = self.field_spec(irr.radiation_field)
                spec.materialize(ds, field_iri)
            except NotFound:
                if field_iri not in ds:
                    ds.mint_individual(builtin.RADIATION_FIELD, field_iri)
            ds.assert_statement(irr_ind, builtin.HAS_RADIATION_FIELD, field_iri)

            start = ds.mint_individual(
                builtin.TIME_POSITION, local(f"_{irr.rid}_start")
            )
            ds.assert_statement(start, HAS_VALUE, Literal(irr.start, "dateTime"))
            ds.assert_statement(irr_ind, builtin.HAS_START_TIME, start.iri)

            if irr.end is not None:
                end = ds.mint_individual(
                    builtin.TIME_POSITION, local(f"_{irr.rid}_end")
                )
                ds.assert_statement(end, HAS_VALUE, Literal(irr.end, "dateTime"))
                ds.assert_statement(irr_ind, builtin.HAS_END_TIME, end.iri)

            if irr.cumulated is not None:
                quantity_class = _CUMULATED_CLASS_FOR_KIND[irr.cumulated.kind]
                quantity = ds.mint_individual(
                    quantity_class, local(f"_{irr.rid}_cumulated")
                )
                ds.assert_statement(
                    quantity, HAS_VALUE, Literal(repr(irr.cumulated.value), "double")
                )
                if irr.cumulated.unit not in ds:
                    ds.mint_individual(builtin.OM_UNIT, irr.cumulated.unit)
                ds.assert_statement(quantity, builtin.HAS_UNIT, irr.cumulated.unit)
                if irr.cumulated.relative_error is not None:
                    error = ds.mint_individual(
                        builtin.EXPO_MEASUREMENT_ERROR, local(f"_{irr.rid}_error")
                    )
                    ds.assert_statement(
                        error,
                        HAS_VALUE,
                        Literal(repr(irr.cumulated.relative_error), "double"),
                    )
                    ds.assert_statement(
                        quantity, builtin.HAS_MEASUREMENT_ERROR, error.iri
                    )
                ds.assert_statement(irr_ind, builtin.HAS_RESULT, quantity.iri)
                ds.assert_statement(exp_ind, builtin.HAS_RESULT, quantity.iri)

        return ds

    def export_experiment(self, exp_id: str) -> tuple[str, list[str]]:
        """Serialize an experiment to Turtle; draft findings become warnings."""
        ds = self.experiment_dataset(exp_id)
        report: Report = validate_dataset(ds, self.ontology, draft=True)
        warnings = [w.render() for w in report.warnings]
        warnings += [f"VIOLATION {v.render()}" for v in report.violations]
        text = serialize_turtle(graph_from_dataset(ds, self.ontology))
        return text, warnings


def seed_demo(store: DataManager) -> ExperimentRecord:
    """Populate a fresh store with the demo experiment and its five samples."""
    responsible = "blerina.gkotse@cern.ch"
    store.add_facility_role("irradiation.facilities@cern.ch", "manager")
    experiment = store.create_experiment(
        title="FCC-RADMON",
        facility="iedm:CERN_IRRAD",
        irradiation_category="PassiveStandardIrradiation",
        technical_requirements="",
        admin=AdminBlock(
            responsible=responsible,
            operator="georgi.gorine@cern.ch",
            manager="irradiation.facilities@cern.ch",
        ),
        user=responsible,
    )
    note = "Room temperature, in irradiation area: 10x10 mm²"
    rows = [
        ("SET-003405", "PCB5-run2017", "2018-09-07T00:00:00Z", (1.153, 0.623, 0.414), responsible),
        ("SET-003541", "PCB19-run2018", "2018-11-26T00:00:00Z", (0.96, 0.348, 0.227), "georgi.gorine@cern.ch"),
        ("SET-003542", "PCB19-run2018", "2018-11-05T00:00:00Z", (0.96, 0.348, 0.227), "georgi.gorine@cern.ch"),
        ("SET-003986", "PCB22-ALD2018", "2018-09-19T00:00:00Z", (1.106, 0.576, 0.389), "georgi.gorine@cern.ch"),
        ("SET-003983", "TESTINA SEC", "2018-11-07T00:00:00Z", (0.256, 0.19, 0.131), "irradiation.facilities@cern.ch"),
    ]
    for sample_id, name, updated, occupancy, author in rows:
        store.create_sample(
            name=name,
            category_note=note,
            requested_fluence=3e17,
            experiment_id=experiment.id,
            user=author,
            occupancy=occupancy,
            force_id=sample_id,
            force_last_update=updated,
        )
    irr = store.register_dut_irradiation(
        experiment.id,
        "SET-003405",
        "iedm:Protons_24GeV",
        "2018-03-30T12:00:00Z",
        user=responsible,
    )
    store.complete_dut_irradiation(
        experiment.id,
        irr.rid,
        "2018-11-12T18:00:00Z",
        fluence_quantity(3e17, relative_error=0.07),
        user=responsible,
    )
    return store.set_visibility(experiment.id, True, responsible)


__all__ = ["DataManager", "Page", "seed_demo"]
