"""Synthetic vaccination-campaign datasets for the bundled decision models.

Three record shapes are produced, one per data structure consumed by the
bundled services: patients (38 fields), vaccination centers (35 fields) and
carriers (50 fields).  Only a handful of fields per shape are actually read
by the decision logic; the rest are realistic filler so that slim projections
have something to drop.

Records are generated in rule cohorts: each record is crafted so that, when
its cohort is evaluated as a batch, it lands on a known rule of the matching
decision table.  The cohort index is embedded in the record id so tests can
recover the expected outcome without re-deriving it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from confidec.dmn.model import Record

VAX_ROLES = ("Patient", "VaccinationCenter", "Carrier")

PATIENT_FIELD_COUNT = 38
CENTER_FIELD_COUNT = 35
CARRIER_FIELD_COUNT = 50

_FIRST_NAMES = [
    "Ada", "Bruno", "Carla", "Davide", "Elena", "Fabio", "Giulia", "Hanna",
    "Ivan", "Jana", "Karim", "Lucia", "Marco", "Nadia", "Otto", "Paola",
    "Quentin", "Rosa", "Stefan", "Teresa",
]
_LAST_NAMES = [
    "Albrecht", "Bianchi", "Conti", "DeLuca", "Esposito", "Ferrari",
    "Greco", "Hofmann", "Keller", "Lombardi", "Marino", "Novak",
    "Olivier", "Pellegrini", "Ricci", "Schmid", "Tamm", "Vogel",
]
_CITIES = [
    "Milan", "Turin", "Bologna", "Florence", "Naples", "Verona",
    "Genoa", "Palermo", "Bari", "Trieste",
]
_REGIONS = ["Lombardy", "Piedmont", "Tuscany", "Campania", "Veneto", "Liguria"]
_STREETS = [
    "Via Roma", "Via Garibaldi", "Corso Italia", "Via Dante",
    "Viale Europa", "Via Verdi", "Piazza Duomo", "Via Mazzini",
]
_INSURERS = [
    "Assicurazioni Generali", "UniSalute", "Allianz Care",
    "AXA Partners", "Reale Mutua",
]
_LANGUAGES = ["Italian", "English", "German", "French", "Spanish"]
_BLOOD_TYPES = ["A+", "A-", "B+", "B-", "AB+", "AB-", "O+", "O-"]
_WORDS = [
    "alpha", "breve", "cedro", "delta", "estro", "fulmine", "grano",
    "ilice", "karst", "lauro", "mirto", "nembo", "opale", "pineta",
]


@dataclass(frozen=True)
class VaxSpec:
    """What to generate: one of the three roles, a count and an RNG seed."""

    role: str
    records: int
    seed: int = 7

    def __post_init__(self) -> None:
        if self.role not in VAX_ROLES:
            raise ValueError(f"unknown vax role {self.role!r}")
        if self.records < 0:
            raise ValueError("records must be >= 0")


def cohort_of_id(record_id: str) -> str:
    """Return the cohort tag embedded in a generated record id."""

    return record_id.rsplit("-", 1)[-1]


def expected_outcome(role: str, record_id: str) -> str:
    """The table output a generated record should land on within its cohort.

    Returns the output value, or "noMatch" for records designed to fall
    through every rule.  Patient cohorts assume the cohort is decided as its
    own batch, since two of the patient rules read batch-level aggregates.
    """

    cohort = cohort_of_id(record_id)
    if role == "Patient":
        return {
            "r1": "High", "r2": "Medium", "r3": "Low",
            "r4": "Ineligible", "nm": "noMatch",
        }[cohort]
    if role == "VaccinationCenter":
        return {
            "r1": "Immediate", "r2": "Needed soon", "r3": "Needed",
            "r4": "No need", "r5": "Medium priority", "r6": "Lower priority",
            "nm": "noMatch",
        }[cohort]
    return {
        "r1": "Rapid Logistics Inc.", "r2": "PrimeWay Haulage",
        "r3": "Atlas Cargo Express", "r4": "SkyBridge Freight",
        "r5": "Global Freight Solutions", "r6": "Evergreen Transport Co.",
        "r7": "Horizon Cargo Services", "r8": "Velocity Transport Ltd.",
        "r9": "BlueLine Logistics", "r10": "Not Eligible",
        "nm": "noMatch",
    }[cohort]


def decision_batches(role: str, records: list[Record]) -> dict[str, list[Record]]:
    """Group records into batches whose per-batch aggregates behave as designed.

    Patient outcomes depend on batch-level aggregates, so each rule cohort is
    decided on its own; the noMatch shadows ride along with the rule-3 children
    because they are what anchors that batch's filtered mean age.  The other
    roles have no aggregate columns and form a single batch.
    """

    if role != "Patient":
        return {"all": list(records)}
    batches: dict[str, list[Record]] = {}
    for rec in records:
        tag = cohort_of_id(rec.id)
        key = "r3" if tag in ("r3", "nm") else tag
        batches.setdefault(key, []).append(rec)
    return batches


def generate_vax(spec: VaxSpec) -> list[Record]:
    """Generate a deterministic dataset for one role.

    The same (role, seed) always yields the same stream of records, so a
    shorter run is a prefix of a longer one.
    """

    rng = random.Random(f"vax/{spec.role}/{spec.seed}")
    maker = {
        "Patient": _make_patient,
        "VaccinationCenter": _make_center,
        "Carrier": _make_carrier,
    }[spec.role]
    return [maker(i, rng) for i in range(spec.records)]


# -- patients ---------------------------------------------------------------

# Cohort cycle for patients.  r3 alternates between a child (rule 3 proper)
# and an adult shadow record whose only job is to give the cohort a filtered
# mean age inside ]18..60[; the shadow itself matches no rule.  r4 records
# still satisfy both aggregation filters so any batch containing one has
# well-defined aggregates.

def _patient_cohort(index: int) -> str:
    slot = index % 4
    if slot != 2:
        return ("r1", "r2", None, "r4")[slot]
    return "r3" if (index // 4) % 2 == 0 else "nm"


def _make_patient(index: int, rng: random.Random) -> Record:
    cohort = _patient_cohort(index)
    if cohort == "r1":
        # Every field lands in the rule-1 sets; ages 65..79 push the cohort
        # aggregates over both thresholds (sum > 250 once 4 records exist).
        core = {
            "Age": rng.randint(65, 79),
            "PreExistingConditions": rng.choice(["Asthma", "Diabetes"]),
            "CurrentMedications": rng.choice(["Metformin", "Albuterol"]),
            "PreviousVaccinations": rng.choice(["COVID-19", "Influenza"]),
            "FamilyMedicalHistory": rng.choice(["Diabetes", "Heart Disease"]),
            "ConsentFormSigned": True,
        }
    elif cohort == "r2":
        core = {
            "Age": rng.randint(20, 35),
            "PreExistingConditions": "Asthma",
            "CurrentMedications": "Metformin",
            "PreviousVaccinations": "Influenza",
            "FamilyMedicalHistory": "Diabetes",
            "ConsentFormSigned": True,
        }
    elif cohort == "r3":
        core = {
            "Age": rng.randint(6, 17),
            "PreExistingConditions": "None",
            "CurrentMedications": "Lisinopril",
            "PreviousVaccinations": "COVID-19",
            "FamilyMedicalHistory": "None",
            "ConsentFormSigned": True,
        }
    elif cohort == "nm":
        # Adult shadow: feeds the mean-age filter (ages 40..50) but fails
        # rules 1-3 on age/conditions and rule 4 on the signed consent.
        core = {
            "Age": rng.randint(40, 50),
            "PreExistingConditions": "None",
            "CurrentMedications": "None",
            "PreviousVaccinations": "COVID-19",
            "FamilyMedicalHistory": "Heart Disease",
            "ConsentFormSigned": True,
        }
    else:
        core = {
            "Age": rng.randint(25, 55),
            "PreExistingConditions": "Asthma",
            "PreviousVaccinations": "COVID-19",
            "CurrentMedications": "None",
            "FamilyMedicalHistory": "Diabetes",
            "ConsentFormSigned": False,
        }
    first = rng.choice(_FIRST_NAMES)
    last = rng.choice(_LAST_NAMES)
    birth_year = 2026 - int(core["Age"]) - 1
    filler = {
        "FullName": f"{first} {last}",
        "DateOfBirth": f"{birth_year:04d}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}",
        "Gender": rng.choice(["female", "male", "other"]),
        "BloodType": rng.choice(_BLOOD_TYPES),
        "HeightCm": rng.randint(120, 200),
        "WeightKg": round(rng.uniform(35.0, 110.0), 1),
        "Email": f"{first.lower()}.{last.lower()}{index}@example.org",
        "Phone": f"+39 3{rng.randint(10, 99)} {rng.randint(1000000, 9999999)}",
        "AddressLine": f"{rng.choice(_STREETS)} {rng.randint(1, 180)}",
        "City": rng.choice(_CITIES),
        "Region": rng.choice(_REGIONS),
        "PostalCode": f"{rng.randint(10, 98)}{rng.randint(100, 999)}",
        "Country": "Italy",
        "InsuranceProvider": rng.choice(_INSURERS),
        "InsuranceNumber": f"INS-{rng.randint(2019, 2026)}-{rng.randint(10 ** 8, 10 ** 9 - 1)}-IT",
        "EmergencyContactName": f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}",
        "EmergencyContactPhone": f"+39 3{rng.randint(10, 99)} {rng.randint(1000000, 9999999)}",
        "PrimaryPhysician": f"Dr. {rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}",
        "ClinicName": f"{rng.choice(_CITIES)} Community Health Clinic {rng.randint(1, 9)}",
        "AllergyList": rng.choice([
            "none recorded", "seasonal pollen", "penicillin (rash)",
            "latex and adhesive tape", "tree nuts and peanuts",
        ]),
        "SmokingStatus": rng.choice([
            "never smoked", "former smoker, quit over a year ago", "current smoker",
        ]),
        "AlcoholUse": rng.choice([
            "does not drink", "occasional social drinking", "regular moderate use",
        ]),
        "ExerciseFrequency": rng.choice([
            "less than once a week", "one to three sessions a week", "daily moderate activity",
        ]),
        "DietaryRestrictions": rng.choice([
            "none", "vegetarian diet", "vegan diet", "gluten-free diet", "low sodium diet",
        ]),
        "OccupationCategory": rng.choice([
            "healthcare worker", "education staff", "retail and services",
            "office administration", "retired",
        ]),
        "HouseholdSize": rng.randint(1, 7),
        "PregnancyStatus": False,
        "LastCheckupDate": (
            f"202{rng.randint(3, 5)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
            f"T{rng.randint(8, 17):02d}:{rng.choice(['00', '15', '30', '45'])}:00"
        ),
        "PreferredLanguage": rng.choice(_LANGUAGES),
        "RegistrationDate": f"2025-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}",
        "NotificationOptIn": rng.random() < 0.8,
        "TravelHistory": rng.choice([
            "no recent travel", "travel within the EU in the last year",
            "intercontinental travel in the last year",
        ]),
    }
    fields = {**core, **filler}
    assert len(fields) == PATIENT_FIELD_COUNT
    return Record(id=f"pat-{index:06d}-{cohort}", fields=fields)


# -- vaccination centers ----------------------------------------------------

def _center_cohort(index: int) -> str:
    return ("r1", "r2", "r3", "r4", "r5", "r6", "nm")[index % 7]


def _make_center(index: int, rng: random.Random) -> Record:
    cohort = _center_cohort(index)
    # Stock/capacity pairs are crafted per rule of the restock table; the
    # comments give the ratio band each cohort sits in.
    if cohort == "r1":  # stock <= 10% of a large capacity
        cap = rng.randint(1000, 4000)
        core = {
            "CurrentVaccineStockLevel": rng.randint(0, cap // 10),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(1000, 90000),
            "VaccinationProgress": rng.randint(0, 40000),
        }
    elif cohort == "r2":  # 10% < stock <= 25%, big population, slow progress
        cap = rng.randint(1000, 4000)
        core = {
            "CurrentVaccineStockLevel": rng.randint(cap // 10 + 1, cap // 4),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(50001, 120000),
            "VaccinationProgress": rng.randint(0, 9999),
        }
    elif cohort == "r3":  # small facility, low stock
        cap = rng.randint(500, 999)
        core = {
            "CurrentVaccineStockLevel": rng.randint(0, cap // 4),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(20001, 60000),
            "VaccinationProgress": rng.randint(0, 4999),
        }
    elif cohort == "r4":  # low stock but campaign nearly done
        cap = rng.randint(1000, 4000)
        core = {
            "CurrentVaccineStockLevel": rng.randint(cap // 10 + 1, cap // 4),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(50001, 120000),
            "VaccinationProgress": rng.randint(45001, 120000),
        }
    elif cohort == "r5":  # 25% < stock <= 50%
        cap = rng.randint(1000, 4000)
        core = {
            "CurrentVaccineStockLevel": rng.randint(cap // 4 + 1, cap // 2),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(1001, 120000),
            "VaccinationProgress": rng.randint(10001, 120000),
        }
    elif cohort == "r6":  # small facility, mid stock, late campaign
        cap = rng.randint(500, 999)
        core = {
            "CurrentVaccineStockLevel": rng.randint(cap // 4 + 1, cap // 2),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(5000, 30000),
            "VaccinationProgress": rng.randint(20001, 120000),
        }
    else:  # stock above half of capacity falls through every rule
        cap = rng.randint(1000, 4000)
        core = {
            "CurrentVaccineStockLevel": rng.randint(cap // 2 + 1, cap),
            "MaxStorageCapacity": cap,
            "PopulationServed": rng.randint(1001, 120000),
            "VaccinationProgress": rng.randint(0, 120000),
        }
    city = rng.choice(_CITIES)
    filler = {
        "FacilityName": f"{city} Vaccination Center {rng.randint(1, 30)}",
        "StreetAddress": f"{rng.choice(_STREETS)} {rng.randint(1, 180)}",
        "City": city,
        "Region": rng.choice(_REGIONS),
        "PostalCode": f"{rng.randint(10, 98)}{rng.randint(100, 999)}",
        "Country": "Italy",
        "Latitude": round(rng.uniform(36.5, 46.5), 5),
        "Longitude": round(rng.uniform(7.0, 18.0), 5),
        "OpeningTime": rng.choice(["07:30", "08:00", "08:30", "09:00"]),
        "ClosingTime": rng.choice(["17:00", "18:00", "19:00", "20:00"]),
        "StaffCount": rng.randint(5, 120),
        "NurseCount": rng.randint(2, 60),
        "DoctorCount": rng.randint(1, 25),
        "FridgeUnits": rng.randint(1, 12),
        "FreezerUnits": rng.randint(0, 6),
        "StorageTempC": round(rng.uniform(-75.0, 8.0), 1),
        "BackupGenerator": rng.random() < 0.7,
        "ParkingSpaces": rng.randint(0, 200),
        "WheelchairAccess": rng.random() < 0.9,
        "ContactEmail": f"logistics.center{index}@regional-health.example.org",
        "ContactPhone": f"+39 0{rng.randint(2, 9)} {rng.randint(1000000, 9999999)}",
        "ManagerName": f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}",
        "EstablishedYear": rng.randint(1975, 2024),
        "LastInspectionDate": (
            f"202{rng.randint(3, 5)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
            f"T{rng.randint(8, 16):02d}:{rng.choice(['00', '30'])}:00"
        ),
        "WasteContract": rng.choice([
            "EcoMed Medical Waste S.r.l.", "BioSafe Disposal S.p.A.",
            "CleanCycle Ambiente S.r.l.",
        ]),
        "SecurityLevel": rng.choice([
            "standard access control", "enhanced access control with badge entry",
            "maximum security with on-site guard",
        ]),
        "DailyCapacity": rng.randint(50, 2000),
        "AppointmentBacklog": rng.randint(0, 5000),
        "WalkInsAllowed": rng.random() < 0.5,
        "Website": f"https://vaccination.example.org/centers/{city.lower()}/{index}",
        "FundingSource": rng.choice([
            "regional health authority", "national vaccination program",
            "mixed regional and national funding",
        ]),
    }
    fields = {**core, **filler}
    assert len(fields) == CENTER_FIELD_COUNT
    return Record(id=f"cen-{index:06d}-{cohort}", fields=fields)


# -- carriers ----------------------------------------------------------------

def _carrier_cohort(index: int) -> str:
    return (
        "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r10", "nm",
    )[index % 11]


def _make_carrier(index: int, rng: random.Random) -> Record:
    cohort = _carrier_cohort(index)
    # Field bands are crafted per rule of the carrier table; earlier rules
    # are dodged through the noted discriminating column.
    if cohort == "r1":
        core = dict(CoverageArea=rng.randint(2001, 6000), NumberOfTrucks=rng.randint(11, 40),
                    NumberOfPlanes=rng.randint(1, 8), OperationalCostPerKm=round(rng.uniform(0.5, 4.99), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=True,
                    AnnualDeliveries=rng.randint(45001, 90000), ISOCompliant=True)
    elif cohort == "r2":  # monitoring off dodges rule 1
        core = dict(CoverageArea=rng.randint(2000, 6000), NumberOfTrucks=rng.randint(10, 40),
                    NumberOfPlanes=rng.randint(2, 8), OperationalCostPerKm=round(rng.uniform(2.0, 3.0), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(15000, 90000), ISOCompliant=True)
    elif cohort == "r3":  # small fleet dodges rules 1-2
        core = dict(CoverageArea=rng.randint(2000, 6000), NumberOfTrucks=rng.randint(2, 9),
                    NumberOfPlanes=rng.randint(2, 8), OperationalCostPerKm=round(rng.uniform(1.0, 1.99), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(20000, 90000), ISOCompliant=True)
    elif cohort == "r4":  # mid coverage dodges rules 1-3
        core = dict(CoverageArea=rng.randint(1000, 1999), NumberOfTrucks=rng.randint(5, 40),
                    NumberOfPlanes=rng.randint(2, 8), OperationalCostPerKm=round(rng.uniform(1.0, 5.0), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(15000, 90000), ISOCompliant=True)
    elif cohort == "r5":  # regional coverage dodges rules 1-4
        core = dict(CoverageArea=rng.randint(500, 999), NumberOfTrucks=rng.randint(3, 40),
                    NumberOfPlanes=rng.randint(2, 8), OperationalCostPerKm=round(rng.uniform(1.0, 3.5), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(25000, 90000), ISOCompliant=True)
    elif cohort == "r6":  # pricier than rule 5 allows
        core = dict(CoverageArea=rng.randint(500, 999), NumberOfTrucks=rng.randint(3, 40),
                    NumberOfPlanes=rng.randint(2, 8), OperationalCostPerKm=round(rng.uniform(3.51, 9.0), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(15000, 90000), ISOCompliant=True)
    elif cohort == "r7":  # ground-only local operator
        core = dict(CoverageArea=rng.randint(50, 499), NumberOfTrucks=rng.randint(2, 40),
                    NumberOfPlanes=0, OperationalCostPerKm=round(rng.uniform(0.5, 1.99), 2),
                    RefrigerationCapacity=False, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(30000, 90000), ISOCompliant=True)
    elif cohort == "r8":  # single refrigerated truck dodges rule 7
        core = dict(CoverageArea=rng.randint(50, 499), NumberOfTrucks=1,
                    NumberOfPlanes=0, OperationalCostPerKm=round(rng.uniform(0.5, 1.99), 2),
                    RefrigerationCapacity=True, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(10000, 90000), ISOCompliant=True)
    elif cohort == "r9":  # one plane dodges rules 7-8
        core = dict(CoverageArea=rng.randint(50, 499), NumberOfTrucks=rng.randint(5, 40),
                    NumberOfPlanes=1, OperationalCostPerKm=round(rng.uniform(0.5, 2.99), 2),
                    RefrigerationCapacity=False, TemperatureMonitoringSystems=True,
                    AnnualDeliveries=rng.randint(30000, 90000), ISOCompliant=True)
    elif cohort == "r10":  # missing certification short-circuits to the last rule
        core = dict(CoverageArea=rng.randint(50, 6000), NumberOfTrucks=rng.randint(0, 40),
                    NumberOfPlanes=rng.randint(0, 8), OperationalCostPerKm=round(rng.uniform(0.5, 9.0), 2),
                    RefrigerationCapacity=rng.random() < 0.5,
                    TemperatureMonitoringSystems=rng.random() < 0.5,
                    AnnualDeliveries=rng.randint(1000, 90000), ISOCompliant=False)
    else:
        # Certified small operator with too many planes for the niche rules.
        core = dict(CoverageArea=rng.randint(50, 499), NumberOfTrucks=rng.randint(2, 4),
                    NumberOfPlanes=rng.randint(2, 8), OperationalCostPerKm=round(rng.uniform(4.0, 9.0), 2),
                    RefrigerationCapacity=False, TemperatureMonitoringSystems=False,
                    AnnualDeliveries=rng.randint(1000, 9000), ISOCompliant=True)
    name_stem = rng.choice(_WORDS).title()
    filler = {
        "CompanyName": f"{name_stem} Freight {rng.randint(1, 99)} Srl",
        "HeadquartersCity": rng.choice(_CITIES),
        "HeadquartersCountry": rng.choice(["Italy", "Austria", "France", "Germany"]),
        "RegistrationNumber": f"REG-{rng.randint(10 ** 7, 10 ** 8 - 1)}",
        "VATNumber": f"IT{rng.randint(10 ** 10, 10 ** 11 - 1)}",
        "FoundedYear": rng.randint(1950, 2022),
        "EmployeeCount": rng.randint(5, 4000),
        "DriverCount": rng.randint(2, 900),
        "PilotCount": rng.randint(0, 60),
        "WarehouseCount": rng.randint(1, 25),
        "WarehouseArea": rng.randint(200, 90000),
        "ColdStorageUnits": rng.randint(0, 40),
        "FleetAgeYears": round(rng.uniform(0.5, 18.0), 1),
        "MaintenanceBudget": rng.randint(10000, 5000000),
        "InsurancePolicyNumber": f"POL-{rng.randint(10 ** 8, 10 ** 9 - 1)}",
        "InsuranceExpiry": f"202{rng.randint(6, 9)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}",
        "SafetyRating": round(rng.uniform(1.0, 5.0), 2),
        "AccidentCount": rng.randint(0, 25),
        "OnTimeRate": round(rng.uniform(0.7, 0.999), 3),
        "DamageRate": round(rng.uniform(0.0, 0.05), 4),
        "CustomerRating": round(rng.uniform(2.0, 5.0), 1),
        "ContractEmail": f"ops{index}@freight.example.org",
        "ContractPhone": f"+39 0{rng.randint(2, 9)} {rng.randint(1000000, 9999999)}",
        "ContactPerson": f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}",
        "Website": f"https://freight.example.org/{name_stem.lower()}{index}",
        "FuelType": rng.choice(["diesel", "lng", "electric", "hybrid"]),
        "AvgSpeedKmH": rng.randint(55, 95),
        "MaxPayloadKg": rng.randint(1000, 44000),
        "GpsTracking": rng.random() < 0.9,
        "RouteOptimization": rng.random() < 0.6,
        "HazmatCertified": rng.random() < 0.3,
        "CustomsBonded": rng.random() < 0.4,
        "NightDelivery": rng.random() < 0.5,
        "WeekendDelivery": rng.random() < 0.5,
        "ApiIntegration": rng.random() < 0.7,
        "TrackingPortal": rng.random() < 0.8,
        "CarbonOffsetProgram": rng.random() < 0.25,
        "Unionized": rng.random() < 0.5,
        "SubcontractorUse": rng.random() < 0.4,
        "PaymentTermsDays": rng.choice([30, 45, 60, 90]),
        "CurrencyCode": "EUR",
        "ServiceRegions": rng.choice(["domestic", "EU", "EU+UK", "global"]),
    }
    fields = {**core, **filler}
    assert len(fields) == CARRIER_FIELD_COUNT
    return Record(id=f"car-{index:06d}-{cohort}", fields=fields)
