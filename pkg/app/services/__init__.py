"""
Services package

MonteCarloService depends on app.schemes, which depends on PowerService;
import it from app.services.montecarlo_service.
"""
from app.services.power_service import PowerService
from app.services.ia_service import InterferenceAlignmentService, mmse_receive_filter, receiver_mse
from app.services.link_service import LinkService

__all__ = [
    'PowerService',
    'InterferenceAlignmentService',
    'mmse_receive_filter',
    'receiver_mse',
    'LinkService'
]
